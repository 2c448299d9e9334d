#include "pipelines.hpp"

#include <algorithm>
#include <memory>

#include "report.hpp"
#include "scalarkit/malcev.hpp"

namespace scalarkit::cli {

using bilinear::BilinearMap;
using modules::Submodule;
using rings::RingPresentation;

PipelineError::PipelineError(std::string stage, const Error& cause, Json partial)
    : std::runtime_error("stage " + stage + ": " + std::string(error_code_name(cause.code())) + ": " + cause.detail()),
      stage_(std::move(stage)),
      code_(cause.code()),
      partial_(std::move(partial)) {}

std::vector<Rational> parse_minpoly_flag(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(parse_rational(part));
    } catch (const Error& e) {
      throw InputError("validation error", "--extension expects comma-separated coefficients, constant first: " +
                                               e.detail(), "", {});
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

class Pipeline {
 public:
  explicit Pipeline(Json header) : report_(std::move(header)) {}

  template <class F>
  void stage(const std::string& name, F&& body) {
    try {
      report_[name] = body();
    } catch (const Error& e) {
      Json failed = Json::object();
      failed["stage"] = name;
      failed["error"] = std::string(error_code_name(e.code()));
      failed["message"] = e.detail();
      report_["failed_stage"] = failed;
      throw PipelineError(name, e, report_);
    }
  }

  Json& report() { return report_; }

 private:
  Json report_;
};

artinian::SplitOptions split_options(const Options& o) {
  artinian::SplitOptions s;
  s.seed = o.seed;
  s.absolute = o.absolute;
  return s;
}

Json header(const std::string& command, const Structure& s) {
  Json h = Json::object();
  h["command"] = command;
  h["kind"] = kind_name(s.kind);
  h["domain"] = s.domain.to_string();
  h["dim"] = s.carrier.size();
  h["basis"] = s.names;
  if (!s.carrier.field()) {
    Json sm = Json::array();
    for (const auto& x : s.carrier.summands()) sm.push_back(x.to_string());
    h["summands"] = sm;
  }
  if (s.kind == Kind::Bilinear) {
    h["codomain_dim"] = s.codomain.size();
    h["codomain_basis"] = s.codomain_names;
  }
  return h;
}

Json submodule_json(const std::vector<std::string>& names, const Submodule& sub) {
  if (sub.desc.field()) return span_json(names, sub.basis);
  // -v generates the same cyclic summand; show the positive-leading one.
  std::vector<Vector> shown;
  for (const auto& v : sub.basis) {
    auto lead = std::find_if(v.begin(), v.end(), [](const Scalar& c) { return !c.is_zero(); });
    bool negative = lead != v.end() && lead->domain().characteristic() == 0 && lead->value() < 0;
    Vector w = v;
    if (negative)
      for (auto& c : w) c = -c;
    shown.push_back(std::move(w));
  }
  Json j = span_json(names, shown);
  {
    Json orders = Json::array();
    for (const auto& x : sub.desc.summands()) orders.push_back(x.to_string());
    j["summands"] = orders;
  }
  return j;
}

std::vector<std::string> pick(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(names[i]);
  return out;
}

std::string triple(const std::vector<std::string>& names, const std::array<std::size_t, 3>& t) {
  return "(" + names[t[0]] + ", " + names[t[1]] + ", " + names[t[2]] + ")";
}

Json local_factors_json(const artinian::CommutativeAlgebra& alg, const std::vector<artinian::LocalFactor>& factors) {
  Json out = Json::array();
  for (const auto& lf : factors) {
    Json f = Json::object();
    f["dim"] = lf.basis.size();
    f["residue"] = lf.residue.to_string();
    f["nilpotency_index"] = lf.nilpotency_index;
    f["r_k"] = artinian::j_series(alg, lf).r_k;
    out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------- ring

Json decomposition_json(const Structure& s, const rings::DecompositionReport& d, const Options& o) {
  Json j = Json::object();
  Json comps = Json::array();
  for (const auto& c : d.components) {
    Json cj = Json::object();
    cj["dim"] = c.basis.size();
    cj["basis"] = combinations_json(s.names, c.basis);
    cj["residue"] = c.factor.residue.to_string();
    cj["scalar_minpoly"] = c.scalar_minpoly.to_string("t");
    cj["enrichment_certified"] = c.enrichment_certified;
    cj["scalar_dim"] = c.scalar_dim;
    cj["scalars_local"] = c.scalars_local;
    cj["r_k"] = c.r_k;
    if (o.witnesses) cj["scalar_action"] = matrix_json(c.scalar_action);
    comps.push_back(cj);
  }
  j["components"] = comps;
  j["addition"] = span_json(s.names, d.addition_basis);
  j["delta"] = span_json(s.names, d.delta);
  j["reassembly_exact"] = d.reassembled_table() == s.table;
  if (o.witnesses) j["witness"] = matrix_json(d.witness);
  return j;
}

Json categoricity_json(const rings::CategoricityVerdict& v) {
  Json j = Json::object();
  j["verdict"] = v.satisfied ? "structurally satisfied" : "not satisfied";
  j["reason"] = v.reason;
  j["components"] = v.components;
  j["addition_zero"] = v.addition_zero;
  j["hypothesis"] = v.hypothesis;
  return j;
}

void field_ring_stages(Pipeline& p, const Structure& s, const RingPresentation& r, const rings::FoundationAddition& fa,
                       const Options& o, const std::string& prefix) {
  p.stage(prefix + "scalars", [&] {
    Json j = Json::object();
    if (fa.square.is_zero()) {
      j["dim"] = 0;
      j["note"] = "zero multiplication";
      return j;
    }
    auto rs = scalar_rings::a_of_r(fa.foundation_ring.multiplication());
    auto alg = scalar_rings::as_commutative_algebra(rs.report.algebra);
    auto factors = artinian::local_decomposition(alg, split_options(o));
    j["dim"] = rs.report.algebra.dim();
    j["p_dim"] = rs.p_dim;
    j["bilinear_certified"] = rs.report.bilinear_certified;
    j["local_factors"] = local_factors_json(alg, factors);
    if (o.witnesses) {
      Json mats = Json::array();
      for (const auto& m : rs.report.algebra.basis) mats.push_back(matrix_json(m));
      j["basis_matrices"] = mats;
    }
    return j;
  });
  rings::DecompositionReport d;
  p.stage(prefix + "decomposition", [&] {
    d = rings::decompose(r, split_options(o));
    return decomposition_json(s, d, o);
  });
  p.stage(prefix + "categoricity", [&] { return categoricity_json(rings::categoricity_check(d)); });
  if (s.domain.characteristic() != 0 && !fa.square.is_zero()) {
    p.stage(prefix + "quasi_factors", [&] {
      auto b = rings::decompose_bounded(r, split_options(o));
      Json j = Json::object();
      Json fs = Json::array();
      for (const auto& q : b.factors) {
        Json f = Json::object();
        f["dim"] = q.basis.size();
        f["basis"] = combinations_json(s.names, q.basis);
        f["residue"] = q.factor.residue.to_string();
        fs.push_back(f);
      }
      j["factors"] = fs;
      j["mutual_annihilation"] = b.mutual_annihilation;
      return j;
    });
  }
}

Json analyze_ring(const Structure& s, const Options& o) {
  Pipeline p(header("analyze", s));
  RingPresentation r(s.carrier, s.table);
  p.stage("flags", [&] {
    Json j = Json::object();
    j["associative"] = r.associative();
    j["commutative"] = r.commutative();
    j["lie"] = r.lie();
    if (o.witnesses && r.associator_witness()) j["associator_witness"] = triple(s.names, *r.associator_witness());
    if (o.witnesses && r.lie_witness()) j["lie_witness"] = triple(s.names, *r.lie_witness());
    return j;
  });
  p.stage("annihilator", [&] { return submodule_json(s.names, rings::annihilator(r)); });
  p.stage("square", [&] { return submodule_json(s.names, rings::square_ideal(r)); });
  p.stage("regular", [&] { return Json(rings::is_regular(r)); });
  rings::FoundationAddition fa;
  p.stage("foundation_addition", [&] {
    fa = rings::foundation_addition(r);
    Json j = Json::object();
    j["delta"] = submodule_json(s.names, fa.delta);
    j["addition"] = submodule_json(s.names, fa.addition);
    j["foundation"] = submodule_json(s.names, fa.foundation);
    return j;
  });
  if (s.carrier.field()) {
    field_ring_stages(p, s, r, fa, o, "");
    return p.report();
  }
  rings::CentralSplit cs;
  p.stage("central_split", [&] {
    cs = rings::central_split_mixed(r);
    Json j = Json::object();
    j["divisible"] = pick(s.names, cs.split.divisible_indices);
    j["bounded"] = pick(s.names, cs.split.bounded_indices);
    j["cross_annihilation"] = cs.cross_annihilation;
    j["intersection_order"] = cs.intersection_order;
    j["torsion_in_annihilator"] = cs.torsion_in_annihilator;
    return j;
  });
  if (cs.divisible.dim() > 0 && cs.divisible.carrier().field()) {
    Structure sub;
    sub.kind = Kind::Ring;
    sub.domain = *cs.divisible.carrier().field();
    sub.carrier = cs.divisible.carrier();
    sub.codomain = sub.carrier;
    sub.names = pick(s.names, cs.split.divisible_indices);
    sub.table = cs.divisible.multiplication().table();
    rings::FoundationAddition dfa;
    p.stage("divisible_foundation_addition", [&] {
      dfa = rings::foundation_addition(cs.divisible);
      return span_json(sub.names, dfa.addition.basis);
    });
    field_ring_stages(p, sub, cs.divisible, dfa, o, "divisible_");
  }
  if (cs.bounded.dim() > 0) {
    const auto names = pick(s.names, cs.split.bounded_indices);
    Integer e = modules::exponent(cs.bounded.carrier());
    if (is_probable_prime(e) && !rings::square_ideal(cs.bounded).is_zero()) {
      p.stage("bounded_quasi_factors", [&] {
        auto b = rings::decompose_bounded(cs.bounded, split_options(o));
        Json j = Json::object();
        Json fs = Json::array();
        for (const auto& q : b.factors) {
          Json f = Json::object();
          f["dim"] = q.basis.size();
          f["basis"] = combinations_json(names, q.basis);
          f["residue"] = q.factor.residue.to_string();
          fs.push_back(f);
        }
        j["factors"] = fs;
        j["mutual_annihilation"] = b.mutual_annihilation;
        return j;
      });
    }
  }
  return p.report();
}

// ---------------------------------------------------------------- bilinear

Json analyze_bilinear(const Structure& s, const Options& o) {
  Pipeline p(header("analyze", s));
  BilinearMap f(s.carrier, s.codomain, s.table);
  p.stage("two_sided_kernel", [&] { return submodule_json(s.names, bilinear::two_sided_kernel(f)); });
  p.stage("image", [&] { return submodule_json(s.codomain_names, bilinear::image_submodule(f)); });
  p.stage("full", [&] { return Json(bilinear::is_full(f)); });
  p.stage("nondegenerate", [&] { return Json(bilinear::is_nondegenerate(f)); });
  p.stage("width", [&] {
    auto w = bilinear::width(f, o.width_bound);
    Json j = Json::object();
    j["value"] = w.value;
    j["exact"] = w.exact;
    j["method"] = w.method;
    Json cert = Json::array();
    for (const auto& [a, b] : w.certificate) cert.push_back("f(" + s.names[a] + ", " + s.names[b] + ")");
    j["certificate"] = cert;
    return j;
  });
  bilinear::BilinearSplit sp;
  p.stage("foundation_addition", [&] {
    sp = bilinear::foundation_addition_split(f);
    Json j = Json::object();
    j["foundation"] = submodule_json(s.names, sp.domain_foundation);
    j["addition"] = submodule_json(s.names, sp.domain_addition);
    j["codomain_complement"] = submodule_json(s.codomain_names, sp.codomain_addition);
    return j;
  });
  if (s.carrier.is_mixed()) {
    p.stage("torsion_split", [&] {
      auto ts = bilinear::torsion_split(f);
      Json j = Json::object();
      j["divisible"] = pick(s.names, ts.domain_split.divisible_indices);
      j["bounded"] = pick(s.names, ts.domain_split.bounded_indices);
      j["divisible_zero"] = ts.divisible.is_zero();
      j["bounded_zero"] = ts.bounded.is_zero();
      return j;
    });
  }
  if (s.carrier.field() && s.codomain.field()) {
    p.stage("scalars", [&] {
      Json j = Json::object();
      if (sp.foundation.dim() == 0 || sp.foundation.is_zero()) {
        j["dim"] = 0;
        j["note"] = "zero map";
        return j;
      }
      auto dec = scalar_rings::decompose_via_scalars(sp.foundation, split_options(o));
      j["dim"] = dec.p.algebra.dim();
      j["bilinear_certified"] = scalar_rings::certify_bilinear(sp.foundation, dec.p);
      Json comps = Json::array();
      for (const auto& c : dec.components) {
        Json cj = Json::object();
        std::vector<Vector> basis;
        for (const auto& v : c.domain_basis) basis.push_back(modules::embed(s.carrier, sp.domain_foundation, v));
        cj["dim"] = basis.size();
        cj["basis"] = combinations_json(s.names, basis);
        cj["residue"] = c.factor.residue.to_string();
        cj["nilpotency_index"] = c.factor.nilpotency_index;
        cj["r_k"] = artinian::j_series(dec.algebra, c.factor).r_k;
        if (o.witnesses) cj["idempotent"] = matrix_json(c.idempotent);
        comps.push_back(cj);
      }
      j["components"] = comps;
      if (o.witnesses) {
        Json mats = Json::array();
        for (const auto& m : dec.p.algebra.basis) mats.push_back(matrix_json(m));
        j["basis_matrices"] = mats;
      }
      return j;
    });
  }
  return p.report();
}

// ---------------------------------------------------------------- commutative algebra

Json analyze_commutative(const Structure& s, const Options& o) {
  Pipeline p(header("analyze", s));
  auto a = commutative_algebra(s);
  p.stage("unit", [&] { return Json(combination(s.names, a.one())); });
  p.stage("radical", [&] { return span_json(s.names, artinian::radical(a)); });
  std::vector<artinian::LocalFactor> factors;
  p.stage("local_decomposition", [&] {
    factors = artinian::local_decomposition(a, split_options(o));
    Vector sum = a.zero();
    bool orthogonal = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      sum = add(sum, factors[i].idempotent);
      for (std::size_t k = 0; k < factors.size(); ++k)
        if (i != k && !is_zero(a.mul(factors[i].idempotent, factors[k].idempotent))) orthogonal = false;
    }
    Json j = Json::object();
    Json fs = Json::array();
    for (const auto& lf : factors) {
      auto js = artinian::j_series(a, lf);
      Json f = Json::object();
      f["idempotent"] = combination(s.names, lf.idempotent);
      f["dim"] = lf.basis.size();
      f["maximal_ideal"] = span_json(s.names, lf.maximal_ideal);
      f["nilpotency_index"] = lf.nilpotency_index;
      f["residue"] = lf.residue.to_string();
      f["layer_dims"] = js.layer_dims;
      f["r_k"] = js.r_k;
      fs.push_back(f);
    }
    j["factors"] = fs;
    j["idempotents_sum_to_one"] = sum == a.one();
    j["orthogonal"] = orthogonal;
    return j;
  });
  p.stage("representatives", [&] {
    Json out = Json::array();
    for (const auto& lf : factors) {
      auto reps = artinian::field_of_representatives(a, lf);
      Json j = Json::object();
      j["generator"] = combination(s.names, reps.lifted_generator);
      j["minpoly"] = reps.minpoly.to_string("t");
      j["newton_steps"] = reps.newton_steps;
      j["minpoly_vanishes"] = is_zero(a.evaluate(reps.minpoly, reps.lifted_generator, lf.idempotent));
      j["basis"] = combinations_json(s.names, reps.basis);
      out.push_back(j);
    }
    return out;
  });
  return p.report();
}

// ---------------------------------------------------------------- module

Json analyze_module(const Structure& s, const Options&) {
  Pipeline p(header("analyze", s));
  p.stage("divisible_bounded_split", [&] {
    auto sp = modules::divisible_bounded_split(s.carrier);
    Json j = Json::object();
    j["divisible"] = pick(s.names, sp.divisible_indices);
    j["bounded"] = pick(s.names, sp.bounded_indices);
    j["exponent"] = modules::exponent(sp.bounded).get_str();
    return j;
  });
  return p.report();
}

// ---------------------------------------------------------------- lie

using LiePtr = std::shared_ptr<const malcev::NilpotentLieAlgebra>;

LiePtr verify_stage(Pipeline& p, const Structure& s, const Options& o) {
  LiePtr l;
  p.stage("verify", [&] {
    auto alg = malcev::verify_nilpotent_lie(RingPresentation(s.carrier, s.table));
    if (alg.nilpotency_class() > o.max_class)
      fail(ErrorCode::ClassTooLarge, "nilpotency class " + std::to_string(alg.nilpotency_class()) +
                                         " exceeds --max-class " + std::to_string(o.max_class));
    Json j = Json::object();
    j["nilpotent"] = true;
    j["class"] = alg.nilpotency_class();
    Json dims = Json::array();
    for (const auto& level : alg.series()) dims.push_back(level.size());
    j["series_dims"] = dims;
    l = std::make_shared<const malcev::NilpotentLieAlgebra>(std::move(alg));
    return j;
  });
  return l;
}

Json group_decomposition_json(const Structure& s, const malcev::GroupDecomposition& g) {
  Json j = Json::object();
  Json fs = Json::array();
  for (const auto& f : g.factors) {
    Json fj = Json::object();
    fj["dim"] = f.basis.size();
    fj["basis"] = combinations_json(s.names, f.basis);
    fj["residue"] = f.residue.to_string();
    fj["class"] = f.nilpotency_class;
    fs.push_back(fj);
  }
  j["factors"] = fs;
  j["abelian"] = span_json(s.names, g.abelian);
  j["cross_commutators_trivial"] = g.cross_commutators_trivial;
  return j;
}

Json analyze_lie(const Structure& s, const Options& o) {
  Pipeline p(header("analyze", s));
  LiePtr l = verify_stage(p, s, o);
  p.stage("correspondence", [&] {
    auto c = malcev::central_series_and_center(l, o.seed);
    Json j = Json::object();
    Json levels = Json::array();
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
      Json lv = Json::object();
      lv["level"] = i + 1;
      lv["closed"] = c.levels[i].closed;
      lv["lands"] = c.levels[i].lands;
      lv["generates"] = c.levels[i].generates;
      levels.push_back(lv);
    }
    j["levels"] = levels;
    j["annihilator"] = span_json(s.names, c.annihilator);
    j["group_center"] = span_json(s.names, c.group_center);
    j["center_matches"] = c.center_matches;
    j["center_verified"] = c.center_verified;
    return j;
  });
  p.stage("group_decomposition",
          [&] { return group_decomposition_json(s, malcev::group_decompose(l, split_options(o))); });
  return p.report();
}

Structure prepare(const InputDocument& doc, const Options& o) {
  Structure s = load_structure(doc);
  if (o.extension) s = extend_structure(s, *o.extension);
  return s;
}

}  // namespace

Json analyze(const InputDocument& doc, const Options& options) {
  Structure s = prepare(doc, options);
  switch (s.kind) {
    case Kind::Ring: return analyze_ring(s, options);
    case Kind::Bilinear: return analyze_bilinear(s, options);
    case Kind::CommutativeAlgebra: return analyze_commutative(s, options);
    case Kind::Module: return analyze_module(s, options);
    case Kind::Lie: return analyze_lie(s, options);
  }
  return {};
}

Json malcev(const std::string& subcommand, const InputDocument& doc, const std::vector<std::string>& args,
            const Options& options) {
  Structure s = prepare(doc, options);
  if (s.kind != Kind::Lie)
    throw InputError("validation error", "malcev needs a document of kind lie, not " + kind_name(s.kind), "/kind",
                     doc.positions.at("/kind"));
  auto arity = [&](std::size_t n, const std::string& what) {
    if (args.size() != n)
      throw InputError("validation error", "malcev " + subcommand + " takes " + what, "", {});
  };
  if (subcommand == "mul" || subcommand == "comm") arity(2, "two elements");
  if (subcommand == "pow") arity(2, "an element and a rational exponent");
  if (subcommand == "decompose") arity(0, "no elements");
  std::vector<Vector> elements;
  for (std::size_t i = 0; i < args.size() && !(subcommand == "pow" && i == 1); ++i)
    elements.push_back(parse_element(s, args[i]));
  Rational exponent;
  if (subcommand == "pow") {
    try {
      exponent = parse_rational(args[1]);
    } catch (const Error& e) {
      throw InputError("validation error", "exponent '" + args[1] + "': " + e.detail(), "", {});
    }
  }
  Pipeline p(header("malcev " + subcommand, s));
  LiePtr l = verify_stage(p, s, options);
  p.stage(subcommand, [&] {
    Json j = Json::object();
    if (subcommand == "decompose") return group_decomposition_json(s, malcev::group_decompose(l, split_options(options)));
    auto g = malcev::group_element(l, elements[0]);
    j["x"] = tuple(elements[0]);
    if (subcommand == "mul") {
      j["y"] = tuple(elements[1]);
      j["product"] = tuple(malcev::group_mul(g, malcev::group_element(l, elements[1])).log);
    } else if (subcommand == "pow") {
      j["exponent"] = exponent.get_str();
      j["power"] = tuple(malcev::group_pow(g, exponent).log);
    } else {
      auto c = malcev::group_commutator(g, malcev::group_element(l, elements[1]));
      j["y"] = tuple(elements[1]);
      j["commutator"] = tuple(c.value.log);
      j["bracket"] = tuple(c.bracket);
      j["trivial_iff_bracket_zero"] = c.trivial_iff_bracket_zero;
      j["leading_term_matches"] = c.leading_term_matches;
      j["class_two_exact"] = c.class_two_exact;
    }
    return j;
  });
  return p.report();
}

}  // namespace scalarkit::cli
