#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scalarkit/modules.hpp"

namespace scalarkit::bilinear {

using modules::ModuleDesc;
using modules::Submodule;

/// c * n where c is a coordinate of a domain element and n a codomain
/// coordinate; integer and rational coordinates act through their value.
Scalar act(const Scalar& c, const Scalar& n);
Vector act(const Scalar& c, const Vector& v);

/// f: M x M -> N given by f(b_i, b_j) for the basis of M.
class BilinearMap {
 public:
  BilinearMap() = default;
  /// Validates shapes, torsion compatibility, and that divisible x bounded
  /// pairs map to zero (InvalidStructure otherwise).
  BilinearMap(ModuleDesc domain, ModuleDesc codomain, std::vector<std::vector<Vector>> table);

  const ModuleDesc& domain() const { return m_; }
  const ModuleDesc& codomain() const { return n_; }
  std::size_t dim() const { return m_.size(); }
  const Vector& at(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::vector<std::vector<Vector>>& table() const { return table_; }

  Vector apply(const Vector& x, const Vector& y) const;
  bool is_zero() const;

  /// Same map with the domain carrier re-expressed in a new basis: the
  /// result sends (c_i, c_j) to f(basis_i, basis_j) written through `into`.
  BilinearMap restrict(const Submodule& domain_part, const ModuleDesc& codomain,
                       const std::function<Vector(const Vector&)>& into) const;

 private:
  ModuleDesc m_;
  ModuleDesc n_;
  std::vector<std::vector<Vector>> table_;
};

Submodule two_sided_kernel(const BilinearMap& f);
Submodule image_submodule(const BilinearMap& f);
bool is_full(const BilinearMap& f);
bool is_nondegenerate(const BilinearMap& f);

struct BilinearSplit {
  BilinearMap foundation;   // complement of C(f) -> im(f)
  BilinearMap addition;     // C(f) -> complement of im(f), identically zero
  Submodule domain_foundation;  // complement of C(f) in M
  Submodule domain_addition;    // C(f)
  Submodule codomain_image;     // im(f)
  Submodule codomain_addition;  // complement of im(f) in N

  /// f(x, y) recomputed through the two parts.
  Vector reassemble(const ModuleDesc& m, const ModuleDesc& n, const Vector& x, const Vector& y) const;
};

/// Throws NoSplit naming which complement is missing.
BilinearSplit foundation_addition_split(const BilinearMap& f);

struct TorsionSplit {
  BilinearMap divisible;  // f_D on M_D into N_D
  BilinearMap bounded;    // f_C on M_B into N_B
  modules::DivisibleBoundedSplit domain_split;
  modules::DivisibleBoundedSplit codomain_split;
};

TorsionSplit torsion_split(const BilinearMap& f);

struct WidthResult {
  unsigned value = 0;
  bool exact = false;
  /// Upper-bound certificate: each im-basis element as the product of the listed basis pair.
  std::vector<std::pair<std::size_t, std::size_t>> certificate;
  std::string method;
};

/// Exact over a prime field when |M| <= 729, otherwise the bound
/// min(dim im f, dim M) with a certificate.
WidthResult width(const BilinearMap& f, unsigned search_bound);

/// Least s with s-fold sums of `values` covering a subspace of size
/// `target_size` of GF(p)^dim, by breadth-first sumset growth. Values are
/// encoded base p. nullopt when the bound is exceeded.
std::optional<unsigned> sumset_width(const std::vector<std::uint64_t>& values, const Integer& p, std::size_t dim,
                                     std::uint64_t target_size, unsigned search_bound);

std::uint64_t encode(const Vector& v, std::uint64_t p);
Vector decode(std::uint64_t code, const Domain& field, std::size_t dim);

/// Carrier size when it is a small finite field space, otherwise nullopt.
std::optional<std::uint64_t> finite_size(const ModuleDesc& m, std::uint64_t limit);

}  // namespace scalarkit::bilinear
