#pragma once

// Runs the embedding pipeline over every enumerated structure of a size and
// collects failures, each with a document and a command that replay it.

#include <string>
#include <vector>

#include "spectopo/embed.hpp"
#include "spectopo/enumerate.hpp"
#include "spectopo/sst.hpp"

namespace spectopo {

enum class SweepKind { SpecSemilattice, SpecPoset };

struct SweepFailure {
  std::size_t index = 0;
  std::string stage;
  std::string detail;
  /// A one-block .sst document holding the structure.
  std::string document;
  std::string command;
};

struct SweepReport {
  SweepKind kind = SweepKind::SpecSemilattice;
  std::size_t size = 0;
  std::size_t structures = 0;
  std::size_t passed = 0;
  std::vector<SweepFailure> failures;

  bool ok() const { return failures.empty(); }
};

struct SweepOptions {
  TopologizeVariant variant = TopologizeVariant::Character;
  /// 0 runs everything; otherwise a stride sample of this many structures.
  std::size_t sample = 0;
  bool principalize = true;
  bool topologize = true;
};

namespace detail {

inline void append(std::string& out, const std::string& part) {
  if (part.empty()) return;
  if (!out.empty()) out += "; ";
  out += part;
}

inline void append_cert(std::string& out, const std::string& label, const Certificate& c) {
  const std::string f = certificate_failures(c);
  if (!f.empty()) append(out, label + ": " + f);
}

inline void record(SweepReport& r, std::size_t i, const std::string& stage, const std::string& detail,
                   const std::string& doc, const std::string& method, TopologizeVariant variant) {
  SweepFailure f;
  f.index = i;
  f.stage = stage;
  f.detail = detail;
  f.document = doc;
  f.command = "spectopo embed --method " + method +
              (variant == TopologizeVariant::Complement ? " --variant complement" : "") + " replay.sst";
  r.failures.push_back(std::move(f));
}

}  // namespace detail

inline SweepReport sweep_spec_semilattices(const std::vector<SpecSemilattice>& inputs, const SweepOptions& opt = {}) {
  SweepReport r;
  r.kind = SweepKind::SpecSemilattice;
  r.size = inputs.empty() ? 0 : inputs.front().size();
  r.structures = inputs.size();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const SpecSemilattice& s = inputs[i];
    const std::size_t before = r.failures.size();
    const std::string doc = sst::format_spec_semilattice("s" + std::to_string(i), s);
    try {
      if (opt.principalize) {
        const PrincipalizeResult p = principalize(s);
        if (!p.ok()) {
          std::string why;
          if (!p.report.axioms_hold()) detail::append(why, "axioms");
          if (!p.principal()) detail::append(why, "principal");
          if (!p.additive()) detail::append(why, "additive");
          if (!p.k_formula) detail::append(why, "k-formula");
          detail::append(why, certificate_failures(p.certificate));
          detail::record(r, i, "principalize", why, doc, "principalize", opt.variant);
        }
        if (!isomorphic(p.u, alt_principalize(s)))
          detail::record(r, i, "alt-principalize", "outputs not isomorphic", doc, "principalize", opt.variant);
      }
      if (opt.topologize) {
        const FullEmbedResult f = topologize_full(s, opt.variant);
        if (!f.ok()) {
          std::string why;
          if (!f.topo.tag.is_topology) detail::append(why, "not-a-topology");
          if (!f.associative) detail::append(why, "associativity");
          detail::append_cert(why, "topologize", f.topo.certificate);
          detail::append_cert(why, "composite", f.certificate);
          detail::record(r, i, "topologize-full", why, doc, "full", opt.variant);
        }
      }
    } catch (const Error& e) {
      detail::record(r, i, "exception", e.what(), doc, "full", opt.variant);
    }
    if (r.failures.size() == before) ++r.passed;
  }
  return r;
}

inline SweepReport sweep_spec_posets(const std::vector<SpecPoset>& inputs, const SweepOptions& opt = {}) {
  SweepReport r;
  r.kind = SweepKind::SpecPoset;
  r.size = inputs.empty() ? 0 : inputs.front().size();
  r.structures = inputs.size();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::string doc = sst::format_spec_poset("p" + std::to_string(i), inputs[i]);
    try {
      const PosetEmbedResult e = poset_topologize(inputs[i], opt.variant);
      if (!e.ok()) {
        std::string why;
        detail::append_cert(why, "downset", e.downset.certificate);
        if (!e.full.ok()) detail::append(why, "full pipeline");
        detail::append_cert(why, "composite", e.certificate);
        detail::record(r, i, "poset-full", why, doc, "poset-full", opt.variant);
        continue;
      }
    } catch (const Error& e) {
      detail::record(r, i, "exception", e.what(), doc, "poset-full", opt.variant);
      continue;
    }
    ++r.passed;
  }
  return r;
}

/// Enumerates size n and sweeps it.
inline SweepReport pipeline_sweep(SweepKind kind, std::size_t n, const SweepOptions& opt = {}) {
  if (kind == SweepKind::SpecPoset) {
    auto all = enum_spec_posets(n);
    return sweep_spec_posets(opt.sample ? stride_sample(all, opt.sample) : all, opt);
  }
  auto all = enum_spec_semilattices(n);
  SweepReport r = sweep_spec_semilattices(opt.sample ? stride_sample(all, opt.sample) : all, opt);
  r.size = n;
  return r;
}

}  // namespace spectopo
