#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "scalarkit/artinian.hpp"
#include "scalarkit/bilinear.hpp"

namespace scalarkit::scalar_rings {

using bilinear::BilinearMap;

/// Subspace of End(F^n) given by an echelonized basis of matrices.
struct EndoAlgebra {
  Domain field;
  std::size_t ambient_dim = 0;
  std::vector<Matrix> basis;
  bool closed = false;  // closed under composition (verified)
  bool unital = false;  // contains the identity (verified)

  std::size_t dim() const { return basis.size(); }
  bool contains(const Matrix& m) const;
  std::optional<Vector> coordinates(const Matrix& m) const;
  Matrix element(const Vector& coords) const;
  bool is_commutative() const;
};

/// Builds an EndoAlgebra from spanning matrices: echelonizes and records the closure flags.
EndoAlgebra make_endo_algebra(const Domain& field, std::size_t n, const std::vector<Matrix>& spanning);

/// Sym_f(M) = {A : f(Ax, y) = f(x, Ay)}.
EndoAlgebra symmetric_endos(const BilinearMap& f);
/// Elements of Sym commuting with all of Sym.
EndoAlgebra z_center(const EndoAlgebra& sym);

struct ScalarRingReport {
  EndoAlgebra algebra;             // P(f) (or A(R)) acting on M
  std::vector<Vector> image_basis;  // im(f) basis in N coordinates, each a single product
  std::vector<std::pair<std::size_t, std::size_t>> image_pairs;  // image_basis[t] = f(b_i, b_j)
  std::vector<Matrix> action_on_image;  // per algebra basis element, in image_basis coordinates
  std::vector<Vector> relation_kernel;  // basis of ker(M (x) M -> N), index i*n + j
  bool bilinear_certified = false;

  /// Action of an endomorphism of M on im(f), in image coordinates: A.f(b_i, b_j) = f(A b_i, b_j).
  Matrix image_action(const BilinearMap& f, const Matrix& a) const;
  /// Coordinates of an element of im(f) in image_basis.
  Vector image_coordinates(const Vector& y) const;
};

/// P(f) as the stabilizer of the relation kernel inside Z(f), with its action on im(f).
/// Requires a field domain and C(f) = 0.
ScalarRingReport p_of_f(const BilinearMap& f);

/// True when f(Ax, y) = f(x, Ay) = A.f(x, y) on all basis pairs for every basis element of P.
bool certify_bilinear(const BilinearMap& f, const ScalarRingReport& report);

struct ZnDiagnostic {
  EndoAlgebra zn;
  std::size_t members = 0;       // |Z_n|, by enumeration
  std::size_t candidates = 0;    // |Z(f)|
};

/// Z_n(f) by enumerating every A in Z(f) and checking that the n-fold sums of
/// (f(x, y), f(Ax, y)) define a function. Prime fields with |M| <= 81.
ZnDiagnostic z_n_diagnostic(const BilinearMap& f, unsigned n);

/// Stabilizer of the full relation subgroup: A with <(f(x,y), f(Ax,y))> functional.
ZnDiagnostic z_saturated_diagnostic(const BilinearMap& f);

/// P(f) as a commutative algebra in the coordinates of report.algebra.basis.
artinian::CommutativeAlgebra as_commutative_algebra(const EndoAlgebra& p);

struct ScalarComponent {
  BilinearMap map;                 // f restricted to e_i M, into e_i im(f)
  std::vector<Vector> domain_basis;    // of e_i M, in M coordinates
  std::vector<Vector> codomain_basis;  // of e_i im(f), in N coordinates
  Matrix idempotent;               // e_i acting on M
  artinian::LocalFactor factor;
};

struct ScalarDecomposition {
  ScalarRingReport p;
  artinian::CommutativeAlgebra algebra;
  std::vector<ScalarComponent> components;
};

ScalarDecomposition decompose_via_scalars(const BilinearMap& f, const artinian::SplitOptions& options = {});

struct RingScalarReport {
  ScalarRingReport report;            // A(R) acting on R / Ann(R), image = R^2
  std::vector<Vector> annihilator;    // Ann(R) basis in R coordinates
  std::vector<Vector> quotient_basis; // representatives of R / Ann(R) in R coordinates
  BilinearMap induced;                // f' on R / Ann(R) into R^2
  std::size_t p_dim = 0;              // dim P(f') before the eta condition

  /// Coordinates of the class of x in R / Ann(R).
  Vector project(const Vector& x) const;
};

/// A(R) = {A in P(f') : A o eta = eta o A on R^2} for multiplication f: R x R -> R over a field.
RingScalarReport a_of_r(const BilinearMap& multiplication);

}  // namespace scalarkit::scalar_rings
