#pragma once

#include <memory>
#include <string>
#include <vector>

#include "scalarkit/rings.hpp"

namespace scalarkit::malcev {

using rings::RingPresentation;

/// Largest nilpotency class handled by the product formula.
constexpr unsigned kMaxClass = 6;

/// A nilpotent Lie algebra over a characteristic-zero field.
class NilpotentLieAlgebra {
 public:
  const RingPresentation& ring() const { return ring_; }
  const Domain& field() const { return field_; }
  std::size_t dim() const { return ring_.dim(); }
  unsigned nilpotency_class() const { return class_; }
  /// series()[i] is a basis of L^{i+1}; the last entry is empty.
  const std::vector<std::vector<Vector>>& series() const { return series_; }
  Vector bracket(const Vector& x, const Vector& y) const { return ring_.mul(x, y); }
  Vector zero() const { return zero_vector(field_, dim()); }
  Vector element(const std::vector<Rational>& coords) const;

 private:
  friend NilpotentLieAlgebra verify_nilpotent_lie(const RingPresentation& r);
  RingPresentation ring_;
  Domain field_;
  unsigned class_ = 0;
  std::vector<std::vector<Vector>> series_;
};

/// Throws NotLie with a failing basis triple, or NotNilpotent.
NilpotentLieAlgebra verify_nilpotent_lie(const RingPresentation& r);

/// log(e^x e^y) as a sum over right-nested words in x and y.
struct BCHTable {
  struct Term {
    std::string word;  // letters 'x' and 'y'; "xxy" stands for (x,(x,y))
    Rational coefficient;
  };
  unsigned cls = 0;
  std::vector<Term> terms;  // nonzero coefficients, by length then word

  /// Coefficient of one right-nested word (0 when absent).
  Rational coefficient(const std::string& word) const;
};

/// Dynkin coefficients up to the given class, computed once per class.
const BCHTable& bch_table(unsigned cls);

/// The product formula truncated at class c. Throws ClassTooLarge above kMaxClass.
Vector bch(const NilpotentLieAlgebra& l, const Vector& x, const Vector& y, unsigned cls);
Vector bch(const NilpotentLieAlgebra& l, const Vector& x, const Vector& y);

/// An element of exp(L) in log coordinates.
struct GroupElement {
  std::shared_ptr<const NilpotentLieAlgebra> algebra;
  Vector log;

  bool is_identity() const { return is_zero(log); }
  bool operator==(const GroupElement& o) const { return algebra == o.algebra && log == o.log; }
};

GroupElement group_element(std::shared_ptr<const NilpotentLieAlgebra> l, Vector log);
GroupElement group_identity(std::shared_ptr<const NilpotentLieAlgebra> l);
/// Throws AlgebraMismatch across algebras.
GroupElement group_mul(const GroupElement& g, const GroupElement& h);
GroupElement group_inv(const GroupElement& g);
GroupElement group_pow(const GroupElement& g, const Rational& a);

struct CommutatorReport {
  GroupElement value;           // g^-1 h^-1 g h
  Vector bracket;               // (log g, log h)
  bool trivial_iff_bracket_zero = false;
  bool leading_term_matches = false;  // value - bracket lies in L^3
  bool class_two_exact = false;       // value == bracket (only claimed at class <= 2)
};

CommutatorReport group_commutator(const GroupElement& g, const GroupElement& h);

struct SeriesLevel {
  bool closed = false;       // bch keeps L^i
  bool lands = false;        // [exp L^i, exp L] inside exp L^{i+1}
  bool generates = false;    // those commutators span L^{i+1} modulo L^{i+2}
};

struct CorrespondenceReport {
  std::vector<SeriesLevel> levels;   // one per i = 1..c
  std::vector<Vector> annihilator;   // Ann(L)
  std::vector<Vector> group_center;  // log Z(G), from group commutators only
  bool center_matches = false;       // the two spans agree
  bool center_verified = false;      // every sampled element of the span is central
};

/// G^i = exp(L^i) and Z(G) = exp(Ann L), checked exactly.
CorrespondenceReport central_series_and_center(const std::shared_ptr<const NilpotentLieAlgebra>& l,
                                               std::uint64_t seed = 0x5eed);

struct GroupFactor {
  std::vector<Vector> basis;  // L_i in log coordinates
  artinian::ResidueField residue;
  unsigned nilpotency_class = 0;
};

struct GroupDecomposition {
  rings::DecompositionReport ring;
  std::vector<GroupFactor> factors;  // G_i = exp(L_i)
  std::vector<Vector> abelian;       // G_0 = exp(L_0)
  bool cross_commutators_trivial = false;
};

GroupDecomposition group_decompose(const std::shared_ptr<const NilpotentLieAlgebra>& l,
                                   const artinian::SplitOptions& options = {});

}  // namespace scalarkit::malcev
