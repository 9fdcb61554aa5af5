#pragma once

#include <random>
#include <vector>

#include "superctl/catalog.hpp"

namespace testing_support {

using namespace superctl;

inline Rational random_rational(std::mt19937_64& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  return make_rational(num(rng), den(rng));
}

/// Random rational supermatrix supported on the blocks of the given parity.
inline SuperMatrix<Rational> random_homogeneous(std::mt19937_64& rng, int m, int n, Parity p,
                                                double density = 0.6) {
  std::bernoulli_distribution keep(density);
  Mat<Rational> e = Mat<Rational>::Zero(m + n, m + n);
  for (int i = 0; i < m + n; ++i) {
    for (int j = 0; j < m + n; ++j) {
      if (position_parity(m, i, j) == p && keep(rng)) e(i, j) = random_rational(rng);
    }
  }
  return SuperMatrix<Rational>(m, n, std::move(e), p);
}

inline Mat<double> random_real(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat<double> out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = u(rng);
  }
  return out;
}

/// Random even Grassmann supermatrix: diagonal blocks carry even monomials,
/// off-diagonal blocks odd ones.
inline GrassmannMatrix<double> random_even_grassmann(std::mt19937_64& rng, int m, int n, int L,
                                                     double scale = 1.0) {
  GrassmannMatrix<double> out(m, n, L);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (Monomial k = 0; k < (Monomial{1} << L); ++k) {
    for (int i = 0; i < m + n; ++i) {
      for (int j = 0; j < m + n; ++j) {
        const int total = (degree(k) + bit(position_parity(m, i, j))) & 1;
        if (total == 0) out.part(k)(i, j) = u(rng) * (k == 0 ? 1.0 : 0.3);
      }
    }
  }
  return out;
}

/// Group element exp(sum c_k e_k) for a realized algebra.
inline GrassmannMatrix<double> group_element(const LieSuperalgebra& g, const std::vector<double>& even_coeffs,
                                             int L) {
  Mat<double> a = Mat<double>::Zero(g.realization().front().size(), g.realization().front().size());
  std::size_t c = 0;
  for (int k = 0; k < g.dim() && c < even_coeffs.size(); ++k) {
    if (g.parity(k) == Parity::Even) a += even_coeffs[c++] * g.realization()[k].cast<double>().entries();
  }
  const auto& shape = g.realization().front();
  return sm_exp(GrassmannMatrix<double>::from_body(shape.m(), shape.n(), L, a), 1.0);
}

}  // namespace testing_support
