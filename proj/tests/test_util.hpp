#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "absorder/space.hpp"

namespace testutil {

using absorder::Cplx;
using absorder::Element;
using absorder::Mat;

// Square hermitian-model element from row-major real entries.
inline Element herm(std::initializer_list<double> rows_flat) {
  const int n = static_cast<int>(std::lround(std::sqrt(double(rows_flat.size()))));
  Mat m(n, n);
  auto it = rows_flat.begin();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Cplx(*it++, 0.0);
  return {m, {1, 1}};
}

inline Element diag(std::initializer_list<double> d) {
  const int n = static_cast<int>(d.size());
  Mat m = Mat::Zero(n, n);
  int i = 0;
  for (double x : d) m(i, i) = Cplx(x, 0.0), ++i;
  return {m, {1, 1}};
}

inline Element vec(std::initializer_list<double> d) {
  Mat m(static_cast<int>(d.size()), 1);
  int i = 0;
  for (double x : d) m(i, 0) = Cplx(x, 0.0), ++i;
  return {m, {1, 1}};
}

}  // namespace testutil
