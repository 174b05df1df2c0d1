#ifndef QTANNER_ALIST_HPP
#define QTANNER_ALIST_HPP

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "qtanner/error.hpp"
#include "qtanner/gf2.hpp"

namespace qtanner {

namespace detail {

inline void write_line(std::ostringstream& out, const std::vector<std::size_t>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ' ';
        out << values[i];
    }
    out << '\n';
}

} // namespace detail

/// MacKay alist text: `n m`, max weights, column weights, row weights, then
/// 1-based row indices per column and column indices per row, zero padded.
inline std::string to_alist(const BitMatrix& h)
{
    const std::size_t m = h.rows(), n = h.cols();
    std::vector<std::vector<std::size_t>> cols(n), rows(m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (h.get(r, c)) {
                cols[c].push_back(r + 1);
                rows[r].push_back(c + 1);
            }
    std::vector<std::size_t> col_w(n), row_w(m);
    for (std::size_t c = 0; c < n; ++c) col_w[c] = cols[c].size();
    for (std::size_t r = 0; r < m; ++r) row_w[r] = rows[r].size();
    const std::size_t max_c = col_w.empty() ? 0 : *std::max_element(col_w.begin(), col_w.end());
    const std::size_t max_r = row_w.empty() ? 0 : *std::max_element(row_w.begin(), row_w.end());

    std::ostringstream out;
    detail::write_line(out, {n, m});
    detail::write_line(out, {max_c, max_r});
    detail::write_line(out, col_w);
    detail::write_line(out, row_w);
    for (auto& c : cols) {
        c.resize(max_c, 0);
        detail::write_line(out, c);
    }
    for (auto& r : rows) {
        r.resize(max_r, 0);
        detail::write_line(out, r);
    }
    return out.str();
}

/// Parses alist text; column and row lists must describe the same matrix.
inline BitMatrix from_alist(const std::string& text)
{
    std::istringstream in(text);
    auto next = [&](const char* what) {
        long long v = 0;
        if (!(in >> v)) throw Error(ErrorKind::parse, std::string("alist: expected ") + what);
        if (v < 0) throw Error(ErrorKind::parse, std::string("alist: negative ") + what);
        return static_cast<std::size_t>(v);
    };
    const std::size_t n = next("column count"), m = next("row count");
    const std::size_t max_c = next("max column weight"), max_r = next("max row weight");
    std::vector<std::size_t> col_w(n), row_w(m);
    for (auto& w : col_w) w = next("column weight");
    for (auto& w : row_w) w = next("row weight");
    BitMatrix h(m, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (col_w[c] > max_c) throw Error(ErrorKind::parse, "alist: column weight exceeds the declared maximum");
        for (std::size_t i = 0; i < max_c; ++i) {
            const std::size_t r = next("row index");
            if (i < col_w[c]) {
                if (r == 0 || r > m) throw Error(ErrorKind::parse, "alist: row index out of range in column " + std::to_string(c + 1));
                if (h.get(r - 1, c)) throw Error(ErrorKind::parse, "alist: repeated row index in column " + std::to_string(c + 1));
                h.set(r - 1, c);
            } else if (r != 0) {
                throw Error(ErrorKind::parse, "alist: padding must be 0 in column " + std::to_string(c + 1));
            }
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (row_w[r] > max_r) throw Error(ErrorKind::parse, "alist: row weight exceeds the declared maximum");
        if (h.row_weight(r) != row_w[r]) throw Error(ErrorKind::parse, "alist: row " + std::to_string(r + 1) + " weight disagrees with column lists");
        std::vector<std::size_t> listed;
        for (std::size_t i = 0; i < max_r; ++i) {
            const std::size_t c = next("column index");
            if (i < row_w[r]) {
                if (c == 0 || c > n || !h.get(r, c - 1) || std::find(listed.begin(), listed.end(), c) != listed.end())
                    throw Error(ErrorKind::parse, "alist: row " + std::to_string(r + 1) + " disagrees with the column lists");
                listed.push_back(c);
            } else if (c != 0) {
                throw Error(ErrorKind::parse, "alist: padding must be 0 in row " + std::to_string(r + 1));
            }
        }
    }
    std::string rest;
    if (in >> rest) throw Error(ErrorKind::parse, "alist: trailing content");
    return h;
}

} // namespace qtanner

#endif // QTANNER_ALIST_HPP
