#pragma once

// Seeded generators shared by the unit and acceptance tests.

#include "scalarkit/scalar_rings.hpp"

namespace testgen {

using namespace scalarkit;
using bilinear::BilinearMap;
using modules::ModuleDesc;

inline BilinearMap direct_sum(const BilinearMap& a, const BilinearMap& b) {
  const Domain& d = *a.domain().field();
  std::size_t n1 = a.dim(), n2 = b.dim(), m1 = a.codomain().size(), m2 = b.codomain().size();
  std::vector<std::vector<Vector>> t(n1 + n2, std::vector<Vector>(n1 + n2, zero_vector(d, m1 + m2)));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < m1; ++k) t[i][j][k] = a.at(i, j)[k];
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < m2; ++k) t[n1 + i][n1 + j][m1 + k] = b.at(i, j)[k];
  return BilinearMap(ModuleDesc::vector_space(d, n1 + n2), ModuleDesc::vector_space(d, m1 + m2), t);
}

// Random nondegenerate full map over GF(p) with dim M <= max_dim, restricted onto its image.
inline BilinearMap random_piece(Rng& rng, const Domain& d, std::size_t max_dim) {
  for (;;) {
    std::size_t n = 1 + rng.below(max_dim), m = 1 + rng.below(3);
    std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
    for (auto& row : t)
      for (auto& v : row) {
        v.clear();
        for (std::size_t k = 0; k < m; ++k) v.push_back(rng.below(3) == 0 ? rng.scalar(d) : Scalar::zero(d));
      }
    BilinearMap f(ModuleDesc::vector_space(d, n), ModuleDesc::vector_space(d, m), t);
    if (f.is_zero() || !bilinear::is_nondegenerate(f)) continue;
    auto image = bilinear::image_submodule(f);
    std::vector<Vector> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(f.domain().basis_element(i));
    return f.restrict(modules::Submodule{f.domain(), b}, image.desc,
                      [&](const Vector& v) { return *modules::coordinates(f.codomain(), image, v); });
  }
}

// Either a single piece or a direct sum of two, followed by a random change of basis on M.
inline BilinearMap random_instance(Rng& rng, const Domain& d) {
  BilinearMap f = random_piece(rng, d, 3);
  if (f.dim() < 3 && rng.below(2) == 0) f = direct_sum(f, random_piece(rng, d, 3 - f.dim()));
  std::size_t n = f.dim();
  Matrix g(d, n, n);
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.scalar(d);
  } while (rank(g) < n);
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(g.column(j));
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = f.apply(cols[i], cols[j]);
  return BilinearMap(f.domain(), f.codomain(), t);
}

inline bool same_space(const scalar_rings::EndoAlgebra& a, const scalar_rings::EndoAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& m : a.basis)
    if (!b.contains(m)) return false;
  return true;
}

}  // namespace testgen
