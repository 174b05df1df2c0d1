#ifndef QTANNER_ERROR_HPP
#define QTANNER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtanner {

enum class ErrorKind {
    dimension,
    invalid_spec,
    parse,
    domain,
    unsupported,
    not_commuting,
    overlapping_edges,
    not_bipartite,
    degree_mismatch,
    pairing_incompatible,
    self_loop,
    label_mismatch,
    css_violation,
    condition_ii_failed,
    swapping_condition_failed,
    budget_exceeded,
};

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::parse: return "parse";
    case ErrorKind::domain: return "domain";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::not_commuting: return "non-commuting";
    case ErrorKind::overlapping_edges: return "overlapping-edges";
    case ErrorKind::not_bipartite: return "not-bipartite";
    case ErrorKind::degree_mismatch: return "degree-mismatch";
    case ErrorKind::pairing_incompatible: return "pairing-incompatible";
    case ErrorKind::self_loop: return "self-loop";
    case ErrorKind::label_mismatch: return "label-mismatch";
    case ErrorKind::css_violation: return "css-violation";
    case ErrorKind::condition_ii_failed: return "condition-ii-failed";
    case ErrorKind::swapping_condition_failed: return "swapping-condition-failed";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    }
    return "unknown";
}

/// All library failures carry a machine-readable kind next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qtanner

#endif // QTANNER_ERROR_HPP
