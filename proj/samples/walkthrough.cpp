// A short tour: build a small specialization semilattice, check it, make it
// principal and additive, embed it into a topology, and ask a sentence about
// the result.

#include <iostream>

#include "spectopo/spectopo.hpp"

using namespace spectopo;

int main() {
  // a < c < 1, b < c, and 1 specializes to c.
  const Poset p = poset_from_pairs(Carrier({"a", "b", "c", "1"}), {{0, 2}, {1, 2}, {2, 3}});
  Relation r = p.relation();
  r.set(3, 2);
  const SpecSemilattice s(joins_from_order(p), r);

  const AxiomReport report = check_axioms(s);
  std::cout << "axioms hold: " << report.axioms_hold() << ", principal: " << report.principal << "\n";
  for (Elem e = 0; e < s.size(); ++e) std::cout << "  K(" << s.name(e) << ") = " << s.name(report.kmap(e)) << "\n";
  if (report.additivity && !report.additivity->additive) {
    const auto& w = report.additivity->witness;
    std::cout << "not additive at " << s.name(w[0]) << ", " << s.name(w[1]) << "\n";
  }

  const PrincipalizeResult u = principalize(s);
  std::cout << "principalized: " << u.u.size() << " elements, additive " << u.additive()
            << ", embedding certified " << u.certificate.is_embedding() << "\n";

  const FullEmbedResult f = topologize_full(s);
  const ClosureSpace& x = f.topo.space;
  std::cout << "topology on " << x.points() << " points with " << x.closed().size() << " closed sets\n";
  for (Elem e = 0; e < s.size(); ++e)
    std::cout << "  " << s.name(e) << " -> " << subset_name(x.ground(), f.composite[e]) << "\n";
  const std::string problems = certificate_failures(f.certificate);
  std::cout << "composite certificate: " << (problems.empty() ? "all flags hold" : problems) << "\n";

  // Union-closure of the closed sets, read off from S(X) alone.
  const fo::EvalResult v = fo::evaluate(fo::builtin("union-closed"), SModel(x));
  std::cout << "union-closed on S(X): " << (v.truth ? "true" : "false") << "\n";
  return f.ok() ? 0 : 1;
}
