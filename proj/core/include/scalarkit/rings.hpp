#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "scalarkit/scalar_rings.hpp"

namespace scalarkit::rings {

using bilinear::BilinearMap;
using modules::ModuleDesc;
using modules::Submodule;

/// A ring (not necessarily associative or unital) given by its
/// multiplication tensor. The flags are computed on basis triples.
class RingPresentation {
 public:
  RingPresentation() = default;
  explicit RingPresentation(BilinearMap multiplication);
  RingPresentation(ModuleDesc carrier, std::vector<std::vector<Vector>> table);

  const BilinearMap& multiplication() const { return f_; }
  const ModuleDesc& carrier() const { return f_.domain(); }
  std::size_t dim() const { return f_.dim(); }
  Vector mul(const Vector& x, const Vector& y) const { return f_.apply(x, y); }
  Vector basis_element(std::size_t i) const { return f_.domain().basis_element(i); }

  bool associative() const { return !associator_witness_; }
  bool commutative() const { return commutative_; }
  bool lie() const { return !lie_witness_; }
  /// Basis triple with (b_i b_j) b_k != b_i (b_j b_k).
  const std::optional<std::array<std::size_t, 3>>& associator_witness() const { return associator_witness_; }
  /// Basis triple breaking antisymmetry (k repeats j) or the Jacobi identity.
  const std::optional<std::array<std::size_t, 3>>& lie_witness() const { return lie_witness_; }

 private:
  void compute_flags();
  BilinearMap f_;
  bool commutative_ = true;
  std::optional<std::array<std::size_t, 3>> associator_witness_;
  std::optional<std::array<std::size_t, 3>> lie_witness_;
};

/// Zero multiplication on a module.
RingPresentation zero_ring(const ModuleDesc& carrier);
/// Block direct product; carriers are concatenated.
RingPresentation direct_product(const RingPresentation& a, const RingPresentation& b);
/// The multiplication restricted to a subring, in the subring's basis.
RingPresentation subring(const RingPresentation& r, const Submodule& part);

Submodule annihilator(const RingPresentation& r);
/// Smallest ideal containing `generators`.
Submodule ideal_closure(const RingPresentation& r, const std::vector<Vector>& generators);
Submodule square_ideal(const RingPresentation& r);

/// A multiplication-only word such as "(x*y)*z".
class Word {
 public:
  static Word parse(const std::string& text);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  /// Every variable occurs exactly once.
  bool multilinear() const;
  /// Occurrences of each variable, in variables() order.
  std::vector<std::size_t> occurrences() const;
  Vector evaluate(const RingPresentation& r, const std::vector<Vector>& args) const;
  std::string to_string() const;

 private:
  struct Node {
    int var = -1;  // leaf when >= 0
    int left = -1;
    int right = -1;
  };
  Vector eval(const RingPresentation& r, const std::vector<Vector>& args, int node) const;
  std::string render(int node) const;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::string> vars_;
};

struct VerbalIdeal {
  Submodule values;  // additive span of the word's values
  Submodule ideal;   // ideal closure of the values
  bool values_span_ideal = false;
  /// Width of the value span; absent for non-multilinear words over infinite domains.
  std::optional<bilinear::WidthResult> width;
  std::string method;
};

VerbalIdeal verbal_ideal(const RingPresentation& r, const Word& word, unsigned search_bound);

/// Ann(R) <= R^2.
bool is_regular(const RingPresentation& r);

struct FoundationAddition {
  Submodule annihilator;
  Submodule square;
  Submodule delta;       // Ann(R) meet R^2
  Submodule addition;    // R_0, a complement of delta inside Ann(R)
  Submodule foundation;  // R_F, containing R^2, with R = R_F (+) R_0
  RingPresentation foundation_ring;
  RingPresentation addition_ring;
};

/// Throws NoSplit over the integers when either complement fails to exist.
FoundationAddition foundation_addition(const RingPresentation& r);

struct Component {
  RingPresentation ring;
  std::vector<Vector> basis;         // in the input coordinates
  artinian::LocalFactor factor;      // the local factor of A(R) cutting it out
  Matrix scalar_action;              // the generator of k_i on the component coordinates
  Poly scalar_minpoly;               // its minimal polynomial over the base
  bool enrichment_certified = false;
  std::size_t scalar_dim = 0;        // dim A(R_i)
  bool scalars_local = false;        // A(R_i) has one local factor
  std::size_t r_k = 0;               // J-series r_k of A(R_i)
};

struct DecompositionReport {
  Domain field;
  std::vector<Component> components;
  RingPresentation addition;
  std::vector<Vector> addition_basis;  // in the input coordinates
  std::vector<Vector> delta;
  std::optional<scalar_rings::RingScalarReport> scalars;  // A(R_F)
  /// Columns: the component bases in order, then the addition basis.
  Matrix witness;

  /// Block product of the components and R_0.
  RingPresentation block_ring() const;
  /// The block tensor carried back through the witness into input coordinates.
  std::vector<std::vector<Vector>> reassembled_table() const;
};

/// R = R_1 x ... x R_n x R_0 over a characteristic-zero field.
DecompositionReport decompose_char0(const RingPresentation& r, const artinian::SplitOptions& options = {});
/// The same pipeline over any field.
DecompositionReport decompose(const RingPresentation& r, const artinian::SplitOptions& options = {});

struct CentralSplit {
  RingPresentation divisible;
  RingPresentation bounded;
  modules::DivisibleBoundedSplit split;
  bool cross_annihilation = false;
  std::size_t intersection_order = 1;  // |R_D meet R_C|
  bool torsion_in_annihilator = false; // torsion of R_D inside Ann(R_D)
};

CentralSplit central_split_mixed(const RingPresentation& r);

struct QuasiFactor {
  RingPresentation ring;
  std::vector<Vector> basis;  // preimage of e_i (R / Ann(R)), input coordinates
  artinian::LocalFactor factor;
};

struct BoundedDecomposition {
  scalar_rings::RingScalarReport scalars;
  std::vector<QuasiFactor> factors;
  bool mutual_annihilation = false;
};

/// Central product of quasi-algebras over a finite field (or Z/p summands).
BoundedDecomposition decompose_bounded(const RingPresentation& r, const artinian::SplitOptions& options = {});

struct ModelConstruction {
  std::vector<Vector> special_basis;  // adapted to R > R^2 > R^3 > ...
  RingPresentation special;           // constants in the special basis
  Domain k0;
  std::size_t k0_degree = 1;          // over the prime field
  RingPresentation model;             // the same constants read over K
};

/// Throws ExtensionNotOverK0 when K has no copy of k0.
ModelConstruction model_construct(const RingPresentation& component, const Domain& k);

struct CategoricityVerdict {
  bool satisfied = false;
  std::size_t components = 0;
  bool addition_zero = false;
  std::string reason;
  std::string hypothesis;  // the part that is not computed
};

CategoricityVerdict categoricity_check(const DecompositionReport& report);

}  // namespace scalarkit::rings
