#pragma once

// The line-oriented structure document format (.sst).
//
//   # comment
//   structure nonadditive
//     kind spec-semilattice
//     elements a b c 1
//     order a < c < 1, b < c
//     spec 1 [= c
//   end
//
// Kinds: spec-poset, spec-semilattice, closure-space, closure-poset,
// closure-semilattice, map, sentence. Lines inside a block:
//   kind K | elements e... | points p... | order a < b, ... | join a b = c
//   spec a [= b, ... | option close-spec true|false | closed {p q} {} ...
//   kmap a -> b, ... | from X to Y | send a -> x, b -> {x y}, ... | formula TEXT
// Chains such as "a < b < c" are accepted in order and spec lines. Spec
// generators are closed to the least specialization unless close-spec is
// false, in which case ⊑ is <= plus exactly the listed pairs.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectopo/closure.hpp"
#include "spectopo/folang.hpp"
#include "spectopo/spec.hpp"

namespace spectopo::sst {

class DocumentError : public Error {
 public:
  DocumentError(int line, int column, const std::string& message)
      : Error("DocumentError", "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

enum class Kind { SpecPoset, SpecSemilattice, ClosureSpace, ClosurePoset, ClosureSemilattice, Map, Sentence };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::SpecPoset: return "spec-poset";
    case Kind::SpecSemilattice: return "spec-semilattice";
    case Kind::ClosureSpace: return "closure-space";
    case Kind::ClosurePoset: return "closure-poset";
    case Kind::ClosureSemilattice: return "closure-semilattice";
    case Kind::Map: return "map";
    case Kind::Sentence: return "sentence";
  }
  return "?";
}

inline std::optional<Kind> kind_from(std::string_view s) {
  for (Kind k : {Kind::SpecPoset, Kind::SpecSemilattice, Kind::ClosureSpace, Kind::ClosurePoset,
                 Kind::ClosureSemilattice, Kind::Map, Kind::Sentence})
    if (s == kind_name(k)) return k;
  return std::nullopt;
}

struct MapData {
  std::string from, to;
  /// Raw send lines: source name -> target names; set-valued when written in braces.
  std::vector<std::pair<std::string, std::vector<std::string>>> sends;
  bool set_valued = false;
  /// Resolved after the whole document is read.
  std::vector<Elem> send;
  std::vector<Subset> send_sets;
};

struct Block {
  std::string name;
  Kind kind = Kind::SpecPoset;
  int line = 0;
  std::optional<SpecPoset> spec_poset;
  std::optional<SpecSemilattice> spec_semilattice;
  std::optional<ClosureSpace> space;
  std::optional<ClosurePoset<Poset>> closure_poset;
  std::optional<ClosurePoset<JoinSemilattice>> closure_semilattice;
  MapData map;
  std::string formula;
  std::optional<fo::Sentence> sentence;

  /// Carrier of the structure, or the ground of a space.
  const Carrier* carrier() const {
    if (spec_poset) return &spec_poset->carrier();
    if (spec_semilattice) return &spec_semilattice->carrier();
    if (space) return &space->ground();
    if (closure_poset) return &closure_poset->base.carrier();
    if (closure_semilattice) return &closure_semilattice->base.carrier();
    return nullptr;
  }
};

struct Document {
  std::vector<Block> blocks;

  const Block* find(const std::string& name) const {
    for (const auto& b : blocks)
      if (b.name == name) return &b;
    return nullptr;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + sep.size();
  }
  return out;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct RawBlock {
  std::string name;
  int line = 0;
  std::optional<Kind> kind;
  int kind_line = 0;
  std::vector<std::string> elements;
  int elements_line = 0;
  bool has_elements = false;
  std::vector<std::pair<std::string, std::string>> order, spec, kmap;
  std::vector<std::pair<int, std::pair<std::string, std::string>>> order_at, spec_at, kmap_at;
  std::vector<std::pair<int, std::vector<std::string>>> joins;
  std::vector<std::pair<int, std::vector<std::string>>> closed;
  bool close_spec = true;
  MapData map;
  int map_line = 0;
  std::string formula;
  /// Document line and column of each formula line's text.
  std::vector<std::pair<int, int>> formula_at;
  /// First line on which each keyword appears.
  std::map<std::string, int> first_line;

  int line_of(const std::string& key) const {
    const auto it = first_line.find(key);
    return it == first_line.end() ? line : it->second;
  }
};

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines_.push_back(l);
  }

  Document read() {
    Document doc;
    std::optional<RawBlock> cur;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      line_ = static_cast<int>(i + 1);
      std::string raw = lines_[i];
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const std::size_t hash = raw.find('#');
      const std::string body = raw.substr(0, hash);
      const std::string t = trim(body);
      if (t.empty()) continue;
      const std::size_t sp = t.find_first_of(" \t");
      const std::string key = t.substr(0, sp);
      const std::string rest = sp == std::string::npos ? "" : trim(std::string_view(t).substr(sp));
      col_ = static_cast<int>(raw.find(key)) + 1;
      rest_col_ = sp == std::string::npos ? col_ + static_cast<int>(key.size())
                                          : static_cast<int>(raw.find(rest, static_cast<std::size_t>(col_ - 1) + key.size())) + 1;
      if (!cur) {
        if (key != "structure") error("expected 'structure'");
        const auto w = words(rest);
        if (w.size() != 1 || !is_valid_name(w[0])) error("expected one block name after 'structure'");
        if (doc.find(w[0])) error("duplicate block name '" + w[0] + "'");
        for (const auto& b : pending_)
          if (b.name == w[0]) error("duplicate block name '" + w[0] + "'");
        cur = RawBlock{};
        cur->name = w[0];
        cur->line = line_;
        continue;
      }
      if (key == "end") {
        if (!rest.empty()) error("unexpected text after 'end'");
        doc.blocks.push_back(build(*cur));
        pending_.push_back(std::move(*cur));
        cur.reset();
        continue;
      }
      line_in_block(*cur, key, rest);
    }
    if (cur) {
      line_ = static_cast<int>(lines_.size()) + 1;
      col_ = 1;
      error("missing 'end' for structure '" + cur->name + "'");
    }
    resolve_maps(doc);
    return doc;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const { throw DocumentError(line_, col_, msg); }
  [[noreturn]] void error_at(int line, const std::string& msg) const { throw DocumentError(line, 1, msg); }

  static std::vector<std::pair<std::string, std::string>> chain_pairs(const std::string& item,
                                                                      std::string_view sep) {
    const auto parts = split(item, sep);
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) out.emplace_back(parts[i], parts[i + 1]);
    return out;
  }

  void line_in_block(RawBlock& b, const std::string& key, const std::string& rest) {
    if (key == "structure") error("nested 'structure' (missing 'end'?)");
    col_ = rest_col_;
    b.first_line.emplace(key, line_);
    if (key == "kind") {
      const auto k = kind_from(rest);
      if (!k) error("unknown kind '" + rest + "'");
      if (b.kind) error("duplicate 'kind'");
      b.kind = k;
      b.kind_line = line_;
    } else if (key == "elements" || key == "points") {
      if (b.has_elements) error("duplicate '" + key + "'");
      b.has_elements = true;
      b.elements = words(rest);
      b.elements_line = line_;
      for (const auto& e : b.elements) {
        if (!is_valid_name(e)) error("invalid element name '" + e + "'");
        if (key == "points" && (e.find('{') != std::string::npos || e.find('}') != std::string::npos))
          error("point names may not contain braces");
      }
    } else if (key == "order" || key == "spec") {
      const std::string_view sep = key == "order" ? "<" : "[=";
      for (const auto& item : split(rest, ",")) {
        if (key == "order" && item.find("[=") != std::string::npos) error("'[=' in an order line");
        const auto pairs = chain_pairs(item, sep);
        if (pairs.empty()) error("expected 'x " + std::string(sep) + " y'");
        for (const auto& p : pairs) {
          if (p.first.empty() || p.second.empty()) error("expected 'x " + std::string(sep) + " y'");
          (key == "order" ? b.order_at : b.spec_at).push_back({line_, p});
        }
      }
    } else if (key == "join") {
      const auto w = words(rest);
      if (w.size() != 4 || w[2] != "=") error("expected 'join a b = c'");
      b.joins.push_back({line_, {w[0], w[1], w[3]}});
    } else if (key == "option") {
      const auto w = words(rest);
      if (w.size() != 2 || w[0] != "close-spec" || (w[1] != "true" && w[1] != "false"))
        error("expected 'option close-spec true|false'");
      b.close_spec = w[1] == "true";
    } else if (key == "closed") {
      std::size_t i = 0;
      while (i < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[i]))) {
          ++i;
          continue;
        }
        if (rest[i] != '{') error("expected '{' in closed-set list");
        const std::size_t close = rest.find('}', i);
        if (close == std::string::npos) error("unterminated '{'");
        b.closed.push_back({line_, words(std::string_view(rest).substr(i + 1, close - i - 1))});
        i = close + 1;
      }
    } else if (key == "kmap") {
      for (const auto& item : split(rest, ",")) {
        const auto p = split(item, "->");
        if (p.size() != 2 || p[0].empty() || p[1].empty()) error("expected 'a -> b'");
        b.kmap_at.push_back({line_, {p[0], p[1]}});
      }
    } else if (key == "from") {
      const auto w = words(rest);
      if (w.size() != 3 || w[1] != "to") error("expected 'from X to Y'");
      b.map.from = w[0];
      b.map.to = w[2];
      b.map_line = line_;
    } else if (key == "send") {
      for (const auto& item : split(rest, ",")) {
        const auto p = split(item, "->");
        if (p.size() != 2 || p[0].empty() || p[1].empty()) error("expected 'a -> x' or 'a -> {x y}'");
        std::vector<std::string> targets;
        const bool braces = p[1].front() == '{';
        if (braces) {
          if (p[1].back() != '}') error("unterminated '{'");
          targets = words(std::string_view(p[1]).substr(1, p[1].size() - 2));
        } else {
          targets = words(p[1]);
          if (targets.size() != 1) error("expected a single target name");
        }
        if (!b.map.sends.empty() && braces != b.map.set_valued) error("mixed point and set targets");
        b.map.set_valued = braces;
        b.map.sends.emplace_back(p[0], std::move(targets));
      }
    } else if (key == "formula") {
      b.formula += (b.formula.empty() ? "" : "\n") + rest;
      b.formula_at.emplace_back(line_, rest_col_);
    } else {
      col_ = 1;
      error("unknown keyword '" + key + "'");
    }
  }

  Elem lookup(const Carrier& c, const std::string& name, int line) const {
    const auto i = c.index_of(name);
    if (!i) error_at(line, "unknown element '" + name + "'");
    return *i;
  }

  Relation order_relation(const RawBlock& b, const Carrier& c) const {
    Relation r(c.size());
    for (const auto& [line, p] : b.order_at) r.set(lookup(c, p.first, line), lookup(c, p.second, line));
    r = refl_trans_close(r);
    try {
      return validate_poset(c, r).relation();
    } catch (const Error& e) {
      error_at(b.line_of("order"), std::string("order is not a partial order: ") + e.what());
    }
  }

  Relation generators(const RawBlock& b, const Carrier& c) const {
    Relation g(c.size());
    for (const auto& [line, p] : b.spec_at) g.set(lookup(c, p.first, line), lookup(c, p.second, line));
    return g;
  }

  JoinSemilattice semilattice(const RawBlock& b, const Poset& p) const {
    JoinSemilattice j;
    try {
      j = joins_from_order(p);
    } catch (const MissingJoin& e) {
      error_at(b.line_of("order"), std::string("joins missing: ") + p.name(e.witness()[0]) + " \\/ " + p.name(e.witness()[1]) +
                           (e.has_upper_bound() ? " has no least upper bound" : " has no upper bound"));
    }
    for (const auto& [line, w] : b.joins) {
      const Elem x = lookup(p.carrier(), w[0], line), y = lookup(p.carrier(), w[1], line);
      const Elem z = lookup(p.carrier(), w[2], line);
      if (j.join(x, y) != z) error_at(line, "join " + w[0] + " " + w[1] + " is " + j.name(j.join(x, y)) + " by the order");
    }
    return j;
  }

  Block build(const RawBlock& b) {
    if (!b.kind) error_at(b.line, "structure '" + b.name + "' has no 'kind'");
    Block out;
    out.name = b.name;
    out.kind = *b.kind;
    out.line = b.line;
    const Kind k = *b.kind;
    const bool ordered = k == Kind::SpecPoset || k == Kind::SpecSemilattice || k == Kind::ClosurePoset ||
                         k == Kind::ClosureSemilattice;
    if ((ordered || k == Kind::ClosureSpace) && !b.has_elements)
      error_at(b.line, "structure '" + b.name + "' lists no elements");
    std::optional<Carrier> carrier;
    if (b.has_elements) {
      try {
        carrier = Carrier(b.elements);
      } catch (const Error&) {
        error_at(b.elements_line, "duplicate element name");
      }
    }
    if (ordered && carrier->size() == 0) error_at(b.elements_line, "a structure needs at least one element");
    auto refuse = [&](bool present, const char* what) {
      if (present) error_at(b.line_of(what), std::string("'") + what + "' is not allowed in a " + kind_name(k) + " block");
    };
    refuse(!b.spec_at.empty() && k != Kind::SpecPoset && k != Kind::SpecSemilattice, "spec");
    refuse(!b.joins.empty() && k != Kind::SpecSemilattice && k != Kind::ClosureSemilattice, "join");
    refuse(!b.closed.empty() && k != Kind::ClosureSpace, "closed");
    refuse(!b.kmap_at.empty() && k != Kind::ClosurePoset && k != Kind::ClosureSemilattice, "kmap");
    refuse(!b.map.from.empty() && k != Kind::Map, "from");
    refuse(!b.map.sends.empty() && k != Kind::Map, "send");
    refuse(!b.formula.empty() && k != Kind::Sentence, "formula");
    refuse(!b.order_at.empty() && !ordered, "order");

    switch (k) {
      case Kind::SpecPoset:
      case Kind::SpecSemilattice: {
        const Poset p = validate_poset(*carrier, order_relation(b, *carrier));
        const Relation g = generators(b, *carrier);
        if (k == Kind::SpecPoset) {
          const Relation sq = b.close_spec ? close_specialization(p, g) : g | p.relation();
          out.spec_poset = SpecPoset(p, sq);
        } else {
          const JoinSemilattice j = semilattice(b, p);
          const Relation sq = b.close_spec ? close_specialization(j, g) : g | p.relation();
          out.spec_semilattice = SpecSemilattice(j, sq);
        }
        break;
      }
      case Kind::ClosurePoset:
      case Kind::ClosureSemilattice: {
        const Poset p = validate_poset(*carrier, order_relation(b, *carrier));
        std::vector<Elem> kv(p.size());
        for (Elem a = 0; a < p.size(); ++a) kv[a] = a;
        for (const auto& [line, pr] : b.kmap_at) kv[lookup(*carrier, pr.first, line)] = lookup(*carrier, pr.second, line);
        try {
          if (k == Kind::ClosurePoset)
            out.closure_poset = make_closure_poset(p, kv);
          else
            out.closure_semilattice = make_closure_poset(semilattice(b, p), kv);
        } catch (const DocumentError&) {
          throw;
        } catch (const Error& e) {
          error_at(b.line_of("kmap"), std::string("kmap is not a closure operation: ") + e.what());
        }
        break;
      }
      case Kind::ClosureSpace: {
        if (carrier->size() > kMaxGround) error_at(b.elements_line, "too many points");
        std::vector<Subset> sets;
        for (const auto& [line, names] : b.closed) {
          Subset m = 0;
          for (const auto& n : names) m |= Subset{1} << lookup(*carrier, n, line);
          sets.push_back(m);
        }
        try {
          out.space = ClosureSpace::from_family(*carrier, sets);
        } catch (const Error& e) {
          error_at(b.line_of("closed"), std::string("closed sets do not form a closure space: ") + e.what());
        }
        break;
      }
      case Kind::Map:
        if (b.map.from.empty()) error_at(b.line, "map '" + b.name + "' has no 'from X to Y' line");
        out.map = b.map;
        break;
      case Kind::Sentence:
        if (b.formula.empty()) error_at(b.line, "sentence '" + b.name + "' has no 'formula' line");
        out.formula = b.formula;
        try {
          out.sentence = fo::parse(b.formula);
        } catch (const fo::ParseError& e) {
          // Report the position in the document, not in the joined formula text.
          const auto [line, col] = b.formula_at.at(static_cast<std::size_t>(e.line() - 1));
          const std::string msg = e.what();
          throw DocumentError(line, col + e.column() - 1, "formula: " + msg.substr(msg.find(": ") + 2));
        }
        break;
    }
    return out;
  }

  void resolve_maps(Document& doc) const {
    for (auto& blk : doc.blocks) {
      if (blk.kind != Kind::Map) continue;
      const int line = map_line_of(blk.name);
      const Block* from = doc.find(blk.map.from);
      const Block* to = doc.find(blk.map.to);
      if (!from || !from->carrier()) error_at(line, "unknown source structure '" + blk.map.from + "'");
      if (!to || !to->carrier()) error_at(line, "unknown target structure '" + blk.map.to + "'");
      if (blk.map.set_valued && to->kind != Kind::ClosureSpace)
        error_at(line, "set-valued sends need a closure-space target");
      const Carrier& src = *from->carrier();
      const Carrier& tgt = *to->carrier();
      blk.map.send.assign(src.size(), 0);
      blk.map.send_sets.assign(src.size(), 0);
      std::vector<bool> seen(src.size(), false);
      for (const auto& [a, targets] : blk.map.sends) {
        const Elem i = lookup(src, a, line);
        if (seen[i]) error_at(line, "element '" + a + "' is sent twice");
        seen[i] = true;
        if (blk.map.set_valued) {
          for (const auto& t : targets) blk.map.send_sets[i] |= Subset{1} << lookup(tgt, t, line);
        } else {
          blk.map.send[i] = lookup(tgt, targets[0], line);
        }
      }
      for (Elem i = 0; i < src.size(); ++i)
        if (!seen[i]) error_at(line, "map '" + blk.name + "' does not send '" + src.name(i) + "'");
    }
  }

  int map_line_of(const std::string& name) const {
    for (const auto& b : pending_)
      if (b.name == name) return b.map_line ? b.map_line : b.line;
    return 0;
  }

  std::vector<std::string> lines_;
  std::vector<RawBlock> pending_;
  int line_ = 0, col_ = 1, rest_col_ = 1;
};

}  // namespace detail

inline Document parse_document(const std::string& text) { return detail::Reader(text).read(); }

// ---------------------------------------------------------------------------
// Formatting

namespace detail {

inline void format_elements(std::ostream& o, const char* key, const Carrier& c) {
  o << "  " << key;
  for (const auto& n : c.names()) o << " " << n;
  o << "\n";
}

inline void format_covers(std::ostream& o, const Poset& p) {
  const auto cov = p.covers();
  if (cov.empty()) return;
  o << "  order";
  for (std::size_t i = 0; i < cov.size(); ++i) o << (i ? ", " : " ") << p.name(cov[i].first) << " < " << p.name(cov[i].second);
  o << "\n";
}

template <class Base>
void format_spec(std::ostream& o, const Base& base, const Relation& sq) {
  std::vector<std::pair<Elem, Elem>> extra;
  for (Elem a = 0; a < base.size(); ++a)
    for (Elem b = 0; b < base.size(); ++b)
      if (sq.test(a, b) && !base.leq(a, b)) extra.emplace_back(a, b);
  if (!extra.empty()) {
    o << "  spec";
    for (std::size_t i = 0; i < extra.size(); ++i)
      o << (i ? ", " : " ") << base.name(extra[i].first) << " [= " << base.name(extra[i].second);
    o << "\n";
  }
  o << "  option close-spec false\n";
}

inline std::string braces(const Carrier& ground, Subset s) {
  std::string out = "{";
  bool first = true;
  for (Elem p = 0; p < ground.size(); ++p)
    if (contains(s, p)) {
      out += (first ? "" : " ") + ground.name(p);
      first = false;
    }
  return out + "}";
}

}  // namespace detail

inline std::string format_spec_poset(const std::string& name, const SpecPoset& s) {
  std::ostringstream o;
  o << "structure " << name << "\n  kind spec-poset\n";
  detail::format_elements(o, "elements", s.carrier());
  detail::format_covers(o, s.base());
  detail::format_spec(o, s.base(), s.specialization());
  o << "end\n";
  return o.str();
}

inline std::string format_spec_semilattice(const std::string& name, const SpecSemilattice& s) {
  std::ostringstream o;
  o << "structure " << name << "\n  kind spec-semilattice\n";
  detail::format_elements(o, "elements", s.carrier());
  detail::format_covers(o, order_from_join(s.base()));
  detail::format_spec(o, s.base(), s.specialization());
  o << "end\n";
  return o.str();
}

inline std::string format_space(const std::string& name, const ClosureSpace& x) {
  std::ostringstream o;
  o << "structure " << name << "\n  kind closure-space\n";
  detail::format_elements(o, "points", x.ground());
  o << "  closed";
  for (Subset c : x.closed()) o << " " << detail::braces(x.ground(), c);
  o << "\nend\n";
  return o.str();
}

template <class Base>
std::string format_closure_poset(const std::string& name, const ClosurePoset<Base>& p) {
  std::ostringstream o;
  constexpr bool joins = requires { p.base.join(Elem{}, Elem{}); };
  o << "structure " << name << "\n  kind " << (joins ? "closure-semilattice" : "closure-poset") << "\n";
  detail::format_elements(o, "elements", p.base.carrier());
  if constexpr (joins)
    detail::format_covers(o, order_from_join(p.base));
  else
    detail::format_covers(o, p.base);
  std::vector<Elem> moved;
  for (Elem a = 0; a < p.k.size(); ++a)
    if (p.k[a] != a) moved.push_back(a);
  if (!moved.empty()) {
    o << "  kmap";
    for (std::size_t i = 0; i < moved.size(); ++i)
      o << (i ? ", " : " ") << p.base.name(moved[i]) << " -> " << p.base.name(p.k[moved[i]]);
    o << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string format_point_map(const std::string& name, const std::string& from, const Carrier& src,
                                    const std::string& to, const Carrier& tgt, const std::vector<Elem>& send) {
  std::ostringstream o;
  o << "structure " << name << "\n  kind map\n  from " << from << " to " << to << "\n";
  if (!send.empty()) {
    o << "  send";
    for (Elem a = 0; a < send.size(); ++a) o << (a ? ", " : " ") << src.name(a) << " -> " << tgt.name(send[a]);
    o << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string format_set_map(const std::string& name, const std::string& from, const Carrier& src,
                                  const std::string& to, const Carrier& ground, const std::vector<Subset>& send) {
  std::ostringstream o;
  o << "structure " << name << "\n  kind map\n  from " << from << " to " << to << "\n";
  if (!send.empty()) {
    o << "  send";
    for (Elem a = 0; a < send.size(); ++a)
      o << (a ? ", " : " ") << src.name(a) << " -> " << detail::braces(ground, send[a]);
    o << "\n";
  }
  o << "end\n";
  return o.str();
}

inline std::string format_sentence(const std::string& name, const fo::Sentence& s) {
  return "structure " + name + "\n  kind sentence\n  formula " + fo::print(s) + "\nend\n";
}

inline std::string format_block(const Block& b) {
  switch (b.kind) {
    case Kind::SpecPoset: return format_spec_poset(b.name, *b.spec_poset);
    case Kind::SpecSemilattice: return format_spec_semilattice(b.name, *b.spec_semilattice);
    case Kind::ClosureSpace: return format_space(b.name, *b.space);
    case Kind::ClosurePoset: return format_closure_poset(b.name, *b.closure_poset);
    case Kind::ClosureSemilattice: return format_closure_poset(b.name, *b.closure_semilattice);
    case Kind::Sentence: return format_sentence(b.name, *b.sentence);
    case Kind::Map: break;
  }
  // Maps need the carriers of their endpoints; format_document supplies them.
  return {};
}

inline std::string format_document(const Document& d) {
  std::string out;
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const Block& b = d.blocks[i];
    if (i) out += "\n";
    if (b.kind != Kind::Map) {
      out += format_block(b);
      continue;
    }
    const Carrier& src = *d.find(b.map.from)->carrier();
    const Carrier& tgt = *d.find(b.map.to)->carrier();
    out += b.map.set_valued ? format_set_map(b.name, b.map.from, src, b.map.to, tgt, b.map.send_sets)
                            : format_point_map(b.name, b.map.from, src, b.map.to, tgt, b.map.send);
  }
  return out;
}

}  // namespace spectopo::sst
