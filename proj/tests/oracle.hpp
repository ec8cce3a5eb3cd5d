// Copyright 2026 The Decouple Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent dense reference constructions used by the tests. Nothing here
// calls into the library's matrix paths: operators are assembled from 2x2
// Pauli matrices with Kronecker products.

#pragma once

#include <complex>
#include <map>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline Mat pauli2(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Kronecker product over n sites; `sites` maps 0-based qubit -> letter.
inline Mat kron_op(int n, const std::map<int, char>& sites) {
  Mat m = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    auto it = sites.find(q);
    const Mat p = pauli2(it == sites.end() ? 'I' : it->second);
    Mat next = Eigen::kroneckerProduct(m, p).eval();
    m = next;
  }
  return m;
}

/// Dense operator from a letter string such as "IXZY".
inline Mat letters_op(const std::string& letters) {
  std::map<int, char> sites;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    if (letters[q] != 'I') sites[static_cast<int>(q)] = letters[q];
  }
  return kron_op(static_cast<int>(letters.size()), sites);
}

/// Σ_{i<j} J(i,j) (XX + YY + ZZ) with J from a callable, plus Σ h_i Z_i.
template <typename F>
Mat heisenberg(int n, F coupling, double zfield = 0.0) {
  const int d = 1 << n;
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    if (zfield != 0.0) h += zfield * kron_op(n, {{i, 'Z'}});
    for (int j = i + 1; j < n; ++j) {
      const double c = coupling(i, j);
      if (c == 0.0) continue;
      for (char a : {'X', 'Y', 'Z'}) h += c * kron_op(n, {{i, a}, {j, a}});
    }
  }
  return h;
}

inline Mat expm_minus_i(const Mat& h, double t) {
  Mat a = (cd(0, -t) * h).eval();
  return a.exp();
}

inline double traceless_norm(Mat m) {
  const cd mean = m.trace() / static_cast<double>(m.rows());
  m.diagonal().array() -= mean;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace oracle
