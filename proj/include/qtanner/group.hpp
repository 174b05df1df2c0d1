#ifndef QTANNER_GROUP_HPP
#define QTANNER_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qtanner/error.hpp"

namespace qtanner {

/// A finite group given by its multiplication table. Elements are 0..order-1.
class GroupTable {
public:
    using Element = std::uint32_t;

    /// Associativity is checked exhaustively up to this order and sampled above it.
    static constexpr std::size_t exhaustive_check_limit = 64;
    static constexpr std::size_t sampled_triples = 1000;

    /// Validates closure, identity, inverses and associativity.
    static GroupTable from_table(std::vector<std::vector<Element>> mul)
    {
        GroupTable g;
        g.order_ = mul.size();
        if (g.order_ == 0) throw Error(ErrorKind::invalid_spec, "group must have at least one element");
        g.mul_.reserve(g.order_ * g.order_);
        for (std::size_t i = 0; i < g.order_; ++i) {
            if (mul[i].size() != g.order_)
                throw Error(ErrorKind::invalid_spec, "multiplication table row " + std::to_string(i) + " has wrong length");
            for (Element x : mul[i]) {
                if (x >= g.order_) throw Error(ErrorKind::invalid_spec, "multiplication table entry out of range");
                g.mul_.push_back(x);
            }
        }
        g.find_identity_and_inverses();
        g.check_associative();
        return g;
    }

    /// Z_m with addition; element i is the residue i.
    static GroupTable cyclic(std::size_t m)
    {
        std::vector<std::vector<Element>> mul(m, std::vector<Element>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) mul[i][j] = static_cast<Element>((i + j) % m);
        return from_table(std::move(mul));
    }

    /// Dihedral group of order 2m. Element i + m*j stands for r^i s^j, with
    /// s r s = r^{-1}, so (r^i s^j)(r^k s^l) = r^{i + (-1)^j k} s^{j+l}.
    static GroupTable dihedral(std::size_t m)
    {
        const std::size_t order = 2 * m;
        std::vector<std::vector<Element>> mul(order, std::vector<Element>(order));
        for (std::size_t x = 0; x < order; ++x)
            for (std::size_t y = 0; y < order; ++y) {
                const std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
                const std::size_t rot = j == 0 ? (i + k) % m : (i + m - k) % m;
                mul[x][y] = static_cast<Element>(rot + m * ((j + l) % 2));
            }
        return from_table(std::move(mul));
    }

    static Element dihedral_rotation(std::size_t m, std::size_t i) { return static_cast<Element>(i % m); }
    static Element dihedral_reflection(std::size_t m, std::size_t i) { return static_cast<Element>(i % m + m); }

    std::size_t order() const { return order_; }
    Element identity() const { return identity_; }
    Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
    Element inverse(Element a) const { return inv_[a]; }

private:
    void find_identity_and_inverses()
    {
        bool found = false;
        for (Element e = 0; e < order_ && !found; ++e) {
            bool ok = true;
            for (Element x = 0; x < order_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
            if (ok) {
                identity_ = e;
                found = true;
            }
        }
        if (!found) throw Error(ErrorKind::invalid_spec, "multiplication table has no identity element");
        inv_.assign(order_, 0);
        for (Element x = 0; x < order_; ++x) {
            bool has_inverse = false;
            for (Element y = 0; y < order_ && !has_inverse; ++y)
                if (mul(x, y) == identity_ && mul(y, x) == identity_) {
                    inv_[x] = y;
                    has_inverse = true;
                }
            if (!has_inverse) throw Error(ErrorKind::invalid_spec, "element " + std::to_string(x) + " has no inverse");
        }
    }

    void check_associative() const
    {
        auto fails = [this](Element a, Element b, Element c) { return mul(mul(a, b), c) != mul(a, mul(b, c)); };
        if (order_ <= exhaustive_check_limit) {
            for (Element a = 0; a < order_; ++a)
                for (Element b = 0; b < order_; ++b)
                    for (Element c = 0; c < order_; ++c)
                        if (fails(a, b, c)) throw Error(ErrorKind::invalid_spec, "multiplication table is not associative");
            return;
        }
        std::mt19937_64 rng(order_);
        std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
        for (std::size_t t = 0; t < sampled_triples; ++t)
            if (fails(pick(rng), pick(rng), pick(rng)))
                throw Error(ErrorKind::invalid_spec, "multiplication table is not associative");
    }

    std::size_t order_ = 0;
    Element identity_ = 0;
    std::vector<Element> mul_;
    std::vector<Element> inv_;
};

} // namespace qtanner

#endif // QTANNER_GROUP_HPP
