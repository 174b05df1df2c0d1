#ifndef QTANNER_QTANNER_HPP
#define QTANNER_QTANNER_HPP

#include "qtanner/alist.hpp"
#include "qtanner/characterize.hpp"
#include "qtanner/code.hpp"
#include "qtanner/complex.hpp"
#include "qtanner/error.hpp"
#include "qtanner/examples.hpp"
#include "qtanner/gf2.hpp"
#include "qtanner/graph.hpp"
#include "qtanner/group.hpp"
#include "qtanner/int_matrix.hpp"
#include "qtanner/spectral.hpp"

namespace qtanner {

inline constexpr const char* version = "0.1.0";

} // namespace qtanner

#endif // QTANNER_QTANNER_HPP
