#pragma once

// The spectopo command line. run() takes the arguments without the program
// name and writes to the given streams; exit codes are 0 when every checked
// property holds, 1 when one fails and 2 for input or usage errors.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spectopo/closure.hpp"
#include "spectopo/embed.hpp"
#include "spectopo/enumerate.hpp"
#include "spectopo/folang.hpp"
#include "spectopo/spec.hpp"
#include "spectopo/sst.hpp"

namespace spectopo::cli {

/// Input problems that are not tied to a position in a document.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error("UsageError", msg) {}
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline sst::Document load(const std::string& path) { return sst::parse_document(read_file(path)); }

inline const sst::Block& select(const sst::Document& doc, const std::string& name,
                                const std::vector<sst::Kind>& kinds) {
  auto accepted = [&](sst::Kind k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };
  std::string wanted;
  for (auto k : kinds) wanted += (wanted.empty() ? "" : ", ") + std::string(sst::kind_name(k));
  if (!name.empty()) {
    const sst::Block* b = doc.find(name);
    if (!b) throw UsageError("no structure named '" + name + "'");
    if (!accepted(b->kind))
      throw UsageError("structure '" + name + "' is a " + sst::kind_name(b->kind) + "; expected " + wanted);
    return *b;
  }
  for (const auto& b : doc.blocks)
    if (accepted(b.kind)) return b;
  throw UsageError("no structure of kind " + wanted + " in the document");
}

template <class M>
std::string nm(const M& m, Elem a) {
  return std::string(m.name(a));
}

/// One line of evidence for a failed law, in element names.
template <class M>
std::string law_witness(const M& m, int law, const std::vector<Elem>& w) {
  auto n = [&](Elem a) { return nm(m, a); };
  auto j = [&](Elem a, Elem b) -> std::string {
    if constexpr (SpecJoinModel<M>)
      return n(m.join(a, b));
    else
      return "?";
  };
  switch (law) {
    case 1: return n(w[0]) + " <= " + n(w[1]) + ", " + n(w[0]) + " not [= " + n(w[1]);
    case 2:
      return n(w[0]) + " [= " + n(w[1]) + ", " + n(w[1]) + " [= " + n(w[2]) + ", " + n(w[0]) + " not [= " + n(w[2]);
    case 3:
      return n(w[0]) + " [= " + n(w[2]) + ", " + n(w[1]) + " [= " + n(w[2]) + ", " + n(w[0]) + " \\/ " + n(w[1]) +
             " = " + j(w[0], w[1]) + " not [= " + n(w[2]);
    case 4: return n(w[0]) + " not [= " + n(w[0]);
    case 5:
      return n(w[0]) + " [= " + n(w[1]) + ", " + n(w[1]) + " <= " + n(w[2]) + ", " + n(w[0]) + " not [= " + n(w[2]);
    case 6:
      return n(w[0]) + " <= " + n(w[1]) + ", " + n(w[1]) + " [= " + n(w[2]) + ", " + n(w[0]) + " not [= " + n(w[2]);
    case 7:
      return n(w[0]) + " [= " + n(w[1]) + ", " + n(w[2]) + " [= " + n(w[3]) + ", " + n(w[0]) + " \\/ " + n(w[2]) +
             " = " + j(w[0], w[2]) + " not [= " + n(w[1]) + " \\/ " + n(w[3]) + " = " + j(w[1], w[3]);
    case 8:
      return n(w[0]) + " [= " + n(w[1]) + ", " + n(w[0]) + " \\/ " + n(w[1]) + " = " + j(w[0], w[1]) + " not [= " +
             n(w[1]);
    case 9:
      return n(w[0]) + " [= " + n(w[1]) + ", " + n(w[0]) + " \\/ " + n(w[2]) + " = " + j(w[0], w[2]) + " not [= " +
             n(w[1]) + " \\/ " + n(w[2]) + " = " + j(w[1], w[2]);
  }
  return witness_text(w);
}

template <class M>
void print_laws(std::ostream& o, const M& m, const AxiomReport& r) {
  for (int i = 1; i <= 9; ++i) {
    const LawVerdict& v = r.law(i);
    const std::string tag = "(S" + std::to_string(i) + ")";
    if (!v.checked)
      o << "  SKIP " << tag << ": needs joins\n";
    else if (v.holds)
      o << "  PASS " << tag << "\n";
    else
      o << "  FAIL " << tag << ": " << law_witness(m, i, v.witness) << "\n";
  }
}

template <class M>
std::string kmap_text(const M& m, const KMap& k) {
  std::string s;
  for (Elem b = 0; b < k.k.size(); ++b) {
    if (!k.k[b]) continue;
    s += (s.empty() ? "" : ", ") + nm(m, b) + " -> " + nm(m, *k.k[b]);
  }
  return s;
}

template <class M>
void print_principal(std::ostream& o, const M& m, const AxiomReport& r) {
  if (r.principal)
    o << "  principal: yes, K: " << kmap_text(m, r.kmap) << "\n";
  else
    o << "  principal: no, S_" << nm(m, *r.nonprincipal_at) << " has no maximum\n";
  if (!r.kmap.characterization_holds)
    o << "  K characterization: fails at " << nm(m, r.kmap.characterization_witness[0]) << ", "
      << nm(m, r.kmap.characterization_witness[1]) << "\n";
  if constexpr (SpecJoinModel<M>) {
    if (!r.additivity) {
      o << "  additive: n/a (not principal)\n";
    } else if (r.additivity->additive) {
      o << "  additive: yes\n";
    } else {
      const Elem a = r.additivity->witness[0], b = r.additivity->witness[1];
      o << "  additive: no, K(" << nm(m, a) << " \\/ " << nm(m, b) << ") = " << nm(m, r.kmap(m.join(a, b)))
        << " but K" << nm(m, a) << " \\/ K" << nm(m, b) << " = " << nm(m, m.join(r.kmap(a), r.kmap(b))) << "\n";
    }
  }
  auto failed = [&](bool semilattice) {
    std::string s;
    for (int law : r.cech.failed_laws)
      if (semilattice || law != 3) s += (s.empty() ? "" : " ") + std::string("(S") + std::to_string(law) + ")";
    return s;
  };
  o << "  cech-poset: " << (r.cech.poset ? "yes" : "no, fails " + failed(false)) << "\n";
  if (r.cech.semilattice)
    o << "  cech-semilattice: " << (*r.cech.semilattice ? "yes" : "no, fails " + failed(true)) << "\n";
}

inline std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

template <class M>
bool check_structure(std::ostream& o, const std::string& title, const M& m) {
  const AxiomReport r = check_axioms(m);
  o << title << "\n";
  print_laws(o, m, r);
  print_principal(o, m, r);
  return r.axioms_hold();
}

inline std::string cert_line(const Certificate& c) {
  auto flag = [](const char* label, const Flag& f) {
    return std::string(label) + (f.holds ? " yes" : " no " + witness_text(f.witness));
  };
  std::string s = flag(c.semilattice_mode ? "join-hom" : "order-hom", c.structure_hom);
  if (!c.semilattice_mode) s += ", " + flag("order-embedding", c.order_embedding);
  s += ", " + flag("(M)", c.m) + ", " + flag("injective", c.injective) + ", " + flag("(E)", c.e) + ", " +
       flag("meets", c.meets);
  return s;
}

inline std::string subset_text(const Carrier& ground, Subset s) { return sst::detail::braces(ground, s); }

inline std::string space_text(const ClosureSpace& x) {
  std::string s;
  for (Subset c : x.closed()) s += (s.empty() ? "" : " ") + subset_text(x.ground(), c);
  return s;
}

inline std::vector<Subset> as_subsets(const std::vector<Elem>& v) { return {v.begin(), v.end()}; }

inline std::string set_map_text(const Carrier& src, const Carrier& ground, const std::vector<Elem>& f) {
  std::string s;
  for (Elem a = 0; a < f.size(); ++a) s += (a ? ", " : "") + src.name(a) + " -> " + subset_text(ground, f[a]);
  return s;
}

/// Writes every line of text prefixed by "# ".
inline std::string commented(const std::string& text) {
  std::istringstream in(text);
  std::string out;
  for (std::string l; std::getline(in, l);) out += "# " + l + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands. Each writes its report to `o` and returns the exit code.

inline int cmd_check(std::ostream& o, const std::string& file, const std::string& name) {
  const sst::Document doc = load(file);
  const sst::Block& b = select(doc, name,
                               {sst::Kind::SpecPoset, sst::Kind::SpecSemilattice, sst::Kind::ClosureSpace,
                                sst::Kind::ClosurePoset, sst::Kind::ClosureSemilattice});
  const std::string head = b.name + ": " + sst::kind_name(b.kind);
  bool ok = false;
  switch (b.kind) {
    case sst::Kind::SpecPoset:
      ok = check_structure(o, head + ", " + std::to_string(b.spec_poset->size()) + " elements", *b.spec_poset);
      break;
    case sst::Kind::SpecSemilattice:
      ok = check_structure(o, head + ", " + std::to_string(b.spec_semilattice->size()) + " elements",
                           *b.spec_semilattice);
      break;
    case sst::Kind::ClosureSpace: {
      const ClosureSpace& x = *b.space;
      const SModel s(x);
      ok = check_structure(o, head + ", " + std::to_string(x.points()) + " points; checking S(X)", s);
      const TopologyTag t = topology_tag(x);
      o << "  topology: " << (t.is_topology ? "yes" : "no");
      if (!t.empty_closed) o << ", {} is not closed";
      if (t.union_witness)
        o << ", " << subset_text(x.ground(), t.union_witness->first) << " u "
          << subset_text(x.ground(), t.union_witness->second) << " is not closed";
      o << "\n";
      break;
    }
    case sst::Kind::ClosurePoset:
      o << "  kmap: closure operation (isotone, extensive, idempotent)\n";
      ok = check_structure(o, head + "; checking the induced specialization",
                           from_operator(b.closure_poset->base, b.closure_poset->k));
      break;
    case sst::Kind::ClosureSemilattice:
      o << "  kmap: closure operation (isotone, extensive, idempotent)\n";
      ok = check_structure(o, head + "; checking the induced specialization",
                           from_operator(b.closure_semilattice->base, b.closure_semilattice->k));
      break;
    default: break;
  }
  o << verdict(ok) << "\n";
  return ok ? 0 : 1;
}

struct EmbedOptions {
  std::string method = "full";
  std::string variant = "character";
  bool emit = false;
};

inline TopologizeVariant parse_variant(const std::string& v) {
  if (v == "character") return TopologizeVariant::Character;
  if (v == "complement") return TopologizeVariant::Complement;
  throw UsageError("unknown variant '" + v + "'");
}

inline int cmd_embed(std::ostream& o, const std::string& file, const std::string& name, const EmbedOptions& opt) {
  const sst::Document doc = load(file);
  const TopologizeVariant variant = parse_variant(opt.variant);
  std::ostringstream summary, emitted;
  bool ok = false;
  const std::string vname = opt.variant;

  if (opt.method == "principalize" || opt.method == "topologize" || opt.method == "full") {
    const sst::Block& b = select(doc, name, {sst::Kind::SpecSemilattice});
    const SpecSemilattice& s = *b.spec_semilattice;
    emitted << sst::format_spec_semilattice(b.name, s) << "\n";
    if (opt.method == "principalize") {
      const PrincipalizeResult p = principalize(s);
      summary << "principalize " << b.name << ": " << s.size() << " -> " << p.u.size() << " elements\n";
      summary << "  principal: " << (p.principal() ? "yes" : "no") << "\n";
      summary << "  additive: " << (p.additive() ? "yes" : "no") << "\n";
      summary << "  K[a,t] = [a,1]: " << (p.k_formula ? "yes" : "no") << "\n";
      summary << "  certificate: " << cert_line(p.certificate) << "\n";
      summary << "  isomorphic to the direct construction: " << (isomorphic(p.u, alt_principalize(s)) ? "yes" : "no")
              << "\n";
      ok = p.ok();
      const std::string un = b.name + "_u";
      emitted << sst::format_spec_semilattice(un, p.u) << "\n";
      emitted << sst::format_point_map(b.name + "_kappa", b.name, s.carrier(), un, p.u.carrier(), p.kappa);
    } else if (opt.method == "topologize") {
      const TopologizeResult t = topologize(s, variant);
      summary << "topologize (" << vname << ") " << b.name << ": " << t.space.points() << " points, "
              << t.space.closed().size() << " closed sets\n";
      summary << "  topology: " << (t.tag.is_topology ? "yes" : "no") << "\n";
      summary << "  closed: " << space_text(t.space) << "\n";
      summary << "  phi: " << set_map_text(s.carrier(), t.space.ground(), t.phi) << "\n";
      summary << "  certificate: " << cert_line(t.certificate) << "\n";
      ok = t.ok();
      const std::string xn = b.name + "_space";
      emitted << sst::format_space(xn, t.space) << "\n";
      emitted << sst::format_set_map(b.name + "_phi", b.name, s.carrier(), xn, t.space.ground(), as_subsets(t.phi));
    } else {
      const FullEmbedResult f = topologize_full(s, variant);
      summary << "full embedding (" << vname << ") " << b.name << "\n";
      summary << "  principalize: " << s.size() << " -> " << f.principal.u.size() << " elements, "
              << (f.principal.ok() ? "certified" : "FAILED") << "\n";
      summary << "  strict zero: " << (f.zero.added ? "adjoined" : "present") << "\n";
      summary << "  topologize: " << f.topo.space.points() << " points, " << f.topo.space.closed().size()
              << " closed sets, " << (f.topo.tag.is_topology ? "topology" : "not a topology") << "\n";
      summary << "  closed: " << space_text(f.topo.space) << "\n";
      summary << "  map: " << set_map_text(s.carrier(), f.topo.space.ground(), f.composite) << "\n";
      summary << "  certificate: " << cert_line(f.certificate) << "\n";
      ok = f.ok();
      const std::string xn = b.name + "_space";
      emitted << sst::format_space(xn, f.topo.space) << "\n";
      emitted << sst::format_set_map(b.name + "_embed", b.name, s.carrier(), xn, f.topo.space.ground(),
                                     as_subsets(f.composite));
    }
  } else if (opt.method == "downset" || opt.method == "poset-full") {
    const sst::Block& b = select(doc, name, {sst::Kind::SpecPoset});
    const SpecPoset& p = *b.spec_poset;
    emitted << sst::format_spec_poset(b.name, p) << "\n";
    if (opt.method == "downset") {
      const DownsetResult d = downset_embed(p);
      summary << "downset " << b.name << ": " << p.size() << " -> " << d.s.size() << " elements\n";
      summary << "  certificate: " << cert_line(d.certificate) << "\n";
      ok = d.certificate.is_embedding();
      const std::string dn = b.name + "_down";
      emitted << sst::format_spec_semilattice(dn, d.s) << "\n";
      emitted << sst::format_point_map(b.name + "_iota", b.name, p.carrier(), dn, d.s.carrier(), d.iota);
    } else {
      const PosetEmbedResult e = poset_topologize(p, variant);
      const ClosureSpace& x = e.full.topo.space;
      summary << "poset embedding (" << vname << ") " << b.name << "\n";
      summary << "  downsets: " << p.size() << " -> " << e.downset.s.size() << " elements, "
              << (e.downset.certificate.is_embedding() ? "certified" : "FAILED") << "\n";
      summary << "  topologize: " << x.points() << " points, " << x.closed().size() << " closed sets, "
              << (e.full.topo.tag.is_topology ? "topology" : "not a topology") << "\n";
      summary << "  closed: " << space_text(x) << "\n";
      summary << "  map: " << set_map_text(p.carrier(), x.ground(), e.composite) << "\n";
      summary << "  certificate: " << cert_line(e.certificate) << "\n";
      ok = e.ok();
      const std::string xn = b.name + "_space";
      emitted << sst::format_space(xn, x) << "\n";
      emitted << sst::format_set_map(b.name + "_embed", b.name, p.carrier(), xn, x.ground(), as_subsets(e.composite));
    }
  } else {
    throw UsageError("unknown method '" + opt.method + "'");
  }
  if (opt.emit)
    o << commented(summary.str() + verdict(ok)) << emitted.str();
  else
    o << summary.str() << verdict(ok) << "\n";
  return ok ? 0 : 1;
}

struct EvalOptions {
  std::string builtin, sentence_file, inline_text, sentence_block;
};

template <class M>
int eval_on(std::ostream& o, const fo::Sentence& s, const M& m) {
  const fo::EvalResult r = fo::evaluate(s, m);
  o << (r.truth ? "true" : "false") << "\n";
  if (!r.witness.empty()) {
    o << (r.truth ? "witness: " : "counterexample: ");
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      o << (i ? ", " : "") << s.prefix[i].second << " = " << nm(m, r.witness[i]);
    o << "\n";
  }
  return r.truth ? 0 : 1;
}

inline int cmd_eval(std::ostream& o, const std::string& file, const std::string& name, const EvalOptions& opt) {
  const int given = !opt.builtin.empty() + !opt.sentence_file.empty() + !opt.inline_text.empty() +
                    !opt.sentence_block.empty();
  if (given != 1) throw UsageError("give exactly one of --builtin, --sentence-file, --inline, --sentence");
  const sst::Document doc = load(file);
  fo::Sentence s;
  if (!opt.builtin.empty())
    s = fo::builtin(opt.builtin);
  else if (!opt.sentence_file.empty())
    s = fo::parse(read_file(opt.sentence_file));
  else if (!opt.inline_text.empty())
    s = fo::parse(opt.inline_text);
  else
    s = *select(doc, opt.sentence_block, {sst::Kind::Sentence}).sentence;

  const sst::Block& b = select(doc, name,
                               {sst::Kind::SpecPoset, sst::Kind::SpecSemilattice, sst::Kind::ClosureSpace,
                                sst::Kind::ClosurePoset, sst::Kind::ClosureSemilattice});
  switch (b.kind) {
    case sst::Kind::SpecPoset: return eval_on(o, s, *b.spec_poset);
    case sst::Kind::SpecSemilattice: return eval_on(o, s, *b.spec_semilattice);
    case sst::Kind::ClosureSpace:
      if (fo::signature_of(s).rel) return eval_on(o, s, ternary_model(*b.space, 4));
      check_ground_guard(b.space->points(), kDefaultPowersetGuard);
      return eval_on(o, s, SModel(*b.space));
    case sst::Kind::ClosurePoset:
      return eval_on(o, s, from_operator(b.closure_poset->base, b.closure_poset->k));
    case sst::Kind::ClosureSemilattice:
      return eval_on(o, s, from_operator(b.closure_semilattice->base, b.closure_semilattice->k));
    default: break;
  }
  return 2;
}

inline int cmd_enum(std::ostream& o, const std::string& kind, std::size_t n, bool emit) {
  std::ostringstream docs;
  std::size_t count = 0;
  std::string prefix = kind + std::to_string(n) + "_";
  std::replace(prefix.begin(), prefix.end(), '-', '_');
  auto sep = [&] {
    if (count) docs << "\n";
  };
  if (kind == "poset") {
    for (const Poset& p : enum_posets(n)) {
      sep();
      docs << sst::format_spec_poset(prefix + std::to_string(count++), SpecPoset(p, p.relation()));
    }
  } else if (kind == "semilattice") {
    for (const JoinSemilattice& j : enum_join_semilattices(n)) {
      sep();
      docs << sst::format_spec_semilattice(prefix + std::to_string(count++),
                                           SpecSemilattice(j, order_from_join(j).relation()));
    }
  } else if (kind == "spec-poset") {
    for (const SpecPoset& s : enum_spec_posets(n)) {
      sep();
      docs << sst::format_spec_poset(prefix + std::to_string(count++), s);
    }
  } else if (kind == "spec-semilattice") {
    for (const SpecSemilattice& s : enum_spec_semilattices(n)) {
      sep();
      docs << sst::format_spec_semilattice(prefix + std::to_string(count++), s);
    }
  } else if (kind == "moore" || kind == "topology") {
    for (const ClosureSpace& x : kind == "moore" ? enum_moore_families(n) : enum_topologies(n)) {
      sep();
      docs << sst::format_space(prefix + std::to_string(count++), x);
    }
  } else {
    throw UsageError("unknown kind '" + kind + "'");
  }
  if (emit)
    o << "# " << count << " " << kind << " structures of size " << n << "\n" << docs.str();
  else
    o << count << " " << kind << " structures of size " << n << "\n";
  return 0;
}

inline int cmd_continuity(std::ostream& o, const std::string& file, const std::string& map_name) {
  const sst::Document doc = load(file);
  const sst::Block& mb = select(doc, map_name, {sst::Kind::Map});
  const sst::Block& from = *doc.find(mb.map.from);
  const sst::Block& to = *doc.find(mb.map.to);
  o << "map " << mb.name << ": " << from.name << " -> " << to.name << "\n";
  if (from.kind == sst::Kind::ClosureSpace && to.kind == sst::Kind::ClosureSpace && !mb.map.set_valued) {
    const PointMap f{*from.space, *to.space, mb.map.send};
    const Carrier& gx = from.space->ground();
    const Carrier& gy = to.space->ground();
    const ContinuityVerdict c = is_continuous(f);
    if (c.continuous) {
      o << "  continuous: yes\n";
    } else {
      o << "  continuous: no, closed " << subset_text(gy, *c.closed_witness) << " has preimage "
        << subset_text(gx, f.preimage(*c.closed_witness)) << " which is not closed\n";
      const Subset z = *c.operator_witness;
      o << "  image of closure: f(K" << subset_text(gx, z) << ") = " << subset_text(gy, f.image(from.space->closure_of(z)))
        << " not within K f" << subset_text(gx, z) << " = " << subset_text(gy, to.space->closure_of(f.image(z)))
        << "\n";
    }
    const MapVerdict cm = is_closed_map(f);
    o << "  closed map: " << (cm.holds ? "yes" : "no, image of " + subset_text(gx, *cm.witness) + " is not closed")
      << "\n";
    if (topology_tag(*to.space).is_topology) {
      const MapVerdict om = is_open_map(f);
      o << "  open map: " << (om.holds ? "yes" : "no, image of open " + subset_text(gx, *om.witness) + " is not open")
        << "\n";
    } else {
      o << "  open map: n/a, target is not a topology\n";
    }
    o << "  embedding: " << (is_space_embedding(f) ? "yes" : "no") << "\n";
    if (from.space->points() <= kDefaultPowersetGuard && to.space->points() <= kDefaultPowersetGuard) {
      const ContinuityEquivalence r = continuity_equivalence(f, kDefaultPowersetGuard);
      auto yn = [](bool b) { return b ? "yes" : "no"; };
      o << "  image function S(X) -> S(Y): homomorphism " << yn(r.s_hom) << ", embedding " << yn(r.s_embedding)
        << "\n";
      o << "  image function P(X) -> P(Y): homomorphism " << yn(r.p_hom) << ", embedding " << yn(r.p_embedding)
        << "\n";
      o << "  agreement: " << (r.agree() ? "yes" : "NO") << "\n";
      if (!r.agree()) {
        o << "FAIL\n";
        return 1;
      }
    } else {
      o << "  image function: skipped, more than " << kDefaultPowersetGuard << " points\n";
    }
    o << verdict(c.continuous) << "\n";
    return c.continuous ? 0 : 1;
  }
  auto closure_case = [&](const auto& p, const auto& q) {
    const ClosureContinuity c = closure_poset_continuity(mb.map.send, p, q);
    if (c.continuous)
      o << "  continuous: yes\n";
    else
      o << "  continuous: no, psi(K " << p.base.name(*c.witness) << ") = " << q.base.name(mb.map.send[p.k[*c.witness]])
        << " not <= K psi(" << p.base.name(*c.witness) << ") = " << q.base.name(q.k[mb.map.send[*c.witness]]) << "\n";
    o << "  homomorphism of the induced specializations: " << (c.spec_hom ? "yes" : "no") << "\n";
    o << verdict(c.continuous) << "\n";
    return c.continuous ? 0 : 1;
  };
  if (from.kind == sst::Kind::ClosurePoset && to.kind == sst::Kind::ClosurePoset)
    return closure_case(*from.closure_poset, *to.closure_poset);
  if (from.kind == sst::Kind::ClosureSemilattice && to.kind == sst::Kind::ClosureSemilattice)
    return closure_case(*from.closure_semilattice, *to.closure_semilattice);
  throw UsageError("continuity needs a point map between closure spaces or a map between closure posets");
}

inline EquivRelation parse_partition(const std::string& text, const Carrier& c) {
  std::vector<std::vector<Elem>> classes;
  std::vector<bool> seen(c.size(), false);
  for (const std::string& part : sst::detail::split(text, "|")) {
    std::vector<Elem> cls;
    for (const std::string& w : sst::detail::words(part)) {
      const auto i = c.index_of(w);
      if (!i) throw UsageError("unknown element '" + w + "' in partition");
      if (seen[*i]) throw UsageError("element '" + w + "' appears twice in partition");
      seen[*i] = true;
      cls.push_back(*i);
    }
    if (cls.empty()) throw UsageError("empty class in partition");
    classes.push_back(std::move(cls));
  }
  for (Elem a = 0; a < c.size(); ++a)
    if (!seen[a]) classes.push_back({a});
  return EquivRelation::from_classes(c.size(), classes);
}

inline int cmd_quotient(std::ostream& o, const std::string& file, const std::string& name, const std::string& partition,
                        bool force, bool emit) {
  const sst::Document doc = load(file);
  const sst::Block& b = select(doc, name, {sst::Kind::SpecSemilattice});
  const SpecSemilattice& s = *b.spec_semilattice;
  const EquivRelation e = parse_partition(partition, s.carrier());
  std::ostringstream r;
  std::string classes;
  for (Elem c = 0; c < e.classes(); ++c) {
    std::string cls;
    for (Elem a : e.members(c)) cls += (cls.empty() ? "" : " ") + s.name(a);
    classes += (classes.empty() ? "" : " ") + ("{" + cls + "}");
  }
  const QuotientResult q = [&] {
    try {
      return quotient(s, e, force);
    } catch (const Error& err) {
      const auto& w = err.witness();
      if (err.code() == "NotCongruence")
        throw make_error("NotCongruence", w,
                         s.name(w[0]) + " ~ " + s.name(w[1]) + " but " + s.name(w[0]) + " \\/ " + s.name(w[2]) +
                             " and " + s.name(w[1]) + " \\/ " + s.name(w[2]) + " are in different classes");
      if (err.code() == "NotMutuallySpecialized")
        throw make_error("NotMutuallySpecialized", w,
                         s.name(w[0]) + " ~ " + s.name(w[1]) + " but " + s.name(w[0]) + " not [= " + s.name(w[1]) +
                             " (use --force to quotient anyway)");
      throw;
    }
  }();
  const bool ok = check_structure(r, "quotient of " + b.name + " by " + classes + (force ? " (forced)" : ""), q.quotient);
  r << "  projection: " << cert_line(q.projection_certificate) << "\n";
  if (emit)
    o << commented(r.str() + verdict(ok)) << sst::format_spec_semilattice(b.name + "_q", q.quotient);
  else
    o << r.str() << verdict(ok) << "\n";
  return ok ? 0 : 1;
}

/// Error codes that report a property of valid input rather than bad input.
inline bool is_property_failure(const std::string& code) {
  static const std::set<std::string> codes = {"InvalidInput",  "PreconditionFailed", "NotCongruence",
                                              "NotMutuallySpecialized", "NotPrincipal",   "NotMorphism"};
  return codes.count(code) > 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Specialization posets and semilattices, closure spaces and their embeddings", "spectopo"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Print only PASS or FAIL");

  std::string file, structure;
  auto* check = app.add_subcommand("check", "Check the axioms, principality, additivity and Cech laws");
  check->add_option("FILE", file, "Structure document")->required();
  check->add_option("--structure", structure, "Block name (default: first suitable block)");

  detail::EmbedOptions eo;
  auto* embed = app.add_subcommand("embed", "Embed into a principal structure or a topology");
  embed->add_option("FILE", file, "Structure document")->required();
  embed->add_option("--structure", structure, "Block name");
  embed->add_option("--method", eo.method, "principalize|topologize|downset|full|poset-full")
      ->check(CLI::IsMember({"principalize", "topologize", "downset", "full", "poset-full"}));
  embed->add_option("--variant", eo.variant, "character|complement")
      ->check(CLI::IsMember({"character", "complement"}));
  std::string emit_fmt;
  embed->add_option("--emit", emit_fmt, "Output format (sst)")->check(CLI::IsMember({"sst"}));

  detail::EvalOptions vo;
  auto* eval = app.add_subcommand("eval", "Evaluate a first-order sentence on a structure");
  eval->add_option("FILE", file, "Structure document")->required();
  eval->add_option("--structure", structure, "Block name");
  eval->add_option("--builtin", vo.builtin, "Name of a built-in sentence");
  eval->add_option("--sentence-file", vo.sentence_file, "File holding one sentence");
  eval->add_option("--inline", vo.inline_text, "Sentence text");
  eval->add_option("--sentence", vo.sentence_block, "Sentence block in FILE");

  std::string kind;
  std::size_t size = 0;
  auto* en = app.add_subcommand("enum", "Enumerate small structures");
  en->add_option("--kind", kind, "poset|semilattice|spec-poset|spec-semilattice|moore|topology")
      ->required()
      ->check(CLI::IsMember({"poset", "semilattice", "spec-poset", "spec-semilattice", "moore", "topology"}));
  en->add_option("--size", size, "Number of elements or points")->required();
  en->add_option("--emit", emit_fmt, "Output format (sst)")->check(CLI::IsMember({"sst"}));

  std::string map_name;
  auto* cont = app.add_subcommand("continuity", "Continuity report for a map");
  cont->add_option("FILE", file, "Structure document")->required();
  cont->add_option("--map", map_name, "Map block name");

  std::string partition;
  bool force = false;
  auto* quot = app.add_subcommand("quotient", "Quotient a specialization semilattice by a partition");
  quot->add_option("FILE", file, "Structure document")->required();
  quot->add_option("--structure", structure, "Block name");
  quot->add_option("--partition", partition, "Classes separated by |, e.g. \"0|1 2|3\"")->required();
  quot->add_flag("--force", force, "Skip the requirement that identified elements specialize each other");
  quot->add_option("--emit", emit_fmt, "Output format (sst)")->check(CLI::IsMember({"sst"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream report;
  int code = 2;
  try {
    if (app.got_subcommand(check))
      code = detail::cmd_check(report, file, structure);
    else if (app.got_subcommand(embed)) {
      eo.emit = !emit_fmt.empty();
      code = detail::cmd_embed(report, file, structure, eo);
    } else if (app.got_subcommand(eval))
      code = detail::cmd_eval(report, file, structure, vo);
    else if (app.got_subcommand(en))
      code = detail::cmd_enum(report, kind, size, !emit_fmt.empty());
    else if (app.got_subcommand(cont))
      code = detail::cmd_continuity(report, file, map_name);
    else if (app.got_subcommand(quot))
      code = detail::cmd_quotient(report, file, structure, partition, force, !emit_fmt.empty());
  } catch (const Error& e) {
    if (detail::is_property_failure(e.code())) {
      if (quiet)
        out << "FAIL\n";
      else
        out << report.str() << e.what() << "\nFAIL\n";
      return 1;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (quiet)
    out << (code == 0 ? "PASS" : "FAIL") << "\n";
  else
    out << report.str();
  return code;
}

}  // namespace spectopo::cli
