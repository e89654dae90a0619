#include <algorithm>
#include <sstream>

#include "noether/baer.hpp"
#include "noether/cech.hpp"
#include "noether/digraph.hpp"
#include "noether/error.hpp"
#include "noether/etale.hpp"
#include "noether/finite_ring.hpp"
#include "noether/job.hpp"
#include "noether/ring.hpp"
#include "noether/topology.hpp"

namespace noether {

namespace {

using Ctx = PayloadContext;

std::string idx(const std::string& ptr, std::size_t k) { return ptr + "/" + std::to_string(k); }

bool is_index(const Json& v) { return v.is_number_integer() && v.get<long long>() >= 0; }

// ------------------------------------------------------------- loaders

RingPtr load_ring(const Ctx& c, const std::string& ptr = "/ring") {
  Field field = c.guard(ptr + "/field", [&] { return Field::parse(c.string(ptr + "/field", "q")); });
  std::vector<std::string> vars = c.strings(ptr + "/vars");
  if (!c.has(ptr + "/vars")) vars = {"x"};
  auto order = c.guard(ptr + "/order",
                       [&] { return MonomialOrder::parse(c.string(ptr + "/order", "degrevlex")); });
  auto quotient = c.strings(ptr + "/quotient");
  auto inverted = c.strings(ptr + "/inverted");
  RingPtr base = c.guard(ptr + "/vars", [&] { return PresentedRing::make(field, vars, order); });
  std::vector<Polynomial> q, inv;
  for (std::size_t k = 0; k < quotient.size(); ++k)
    q.push_back(c.guard(idx(ptr + "/quotient", k), [&] { return base->parse_polynomial(quotient[k]); }));
  for (std::size_t k = 0; k < inverted.size(); ++k)
    inv.push_back(c.guard(idx(ptr + "/inverted", k), [&] { return base->parse_polynomial(inverted[k]); }));
  return c.guard(ptr, [&] { return PresentedRing::make(field, vars, order, q, inv); });
}

Polynomial load_poly(const Ctx& c, const RingPtr& ring, const std::string& ptr) {
  std::string text = c.string(ptr);
  return c.guard(ptr, [&] { return ring->parse_polynomial(text); });
}

std::vector<Polynomial> load_polys(const Ctx& c, const RingPtr& ring, const std::string& ptr) {
  std::vector<Polynomial> out;
  auto texts = c.strings(ptr);
  for (std::size_t k = 0; k < texts.size(); ++k) {
    std::string p = c.at(ptr).is_string() ? ptr : idx(ptr, k);
    out.push_back(c.guard(p, [&] { return ring->parse_polynomial(texts[k]); }));
  }
  return out;
}

IdealHandle load_ideal(const Ctx& c, const RingPtr& ring, const std::string& ptr) {
  if (!c.has(ptr)) c.fail(ptr, "missing required field");
  return IdealHandle(ring, load_polys(c, ring, ptr));
}

DistinguishedOpen load_open(const Ctx& c, const RingPtr& ring, const std::string& ptr,
                            const std::string& fallback = "") {
  std::string text = fallback.empty() ? c.string(ptr) : c.string(ptr, fallback);
  return c.guard(ptr, [&] { return DistinguishedOpen::parse(ring, text); });
}

std::vector<DistinguishedOpen> load_opens(const Ctx& c, const RingPtr& ring, const std::string& ptr) {
  std::vector<DistinguishedOpen> out;
  for (std::size_t k = 0; k < c.array_size(ptr); ++k) out.push_back(load_open(c, ring, idx(ptr, k)));
  return out;
}

std::vector<std::string> fmt(const RingPtr& ring, const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(ring->format(p));
  return out;
}

Json ring_json(const RingPtr& ring) {
  return Json{{"field", ring->field().to_string()},
              {"vars", ring->vars()},
              {"order", ring->order().name()},
              {"quotient", fmt(ring, ring->quotient())},
              {"inverted", fmt(ring, ring->inverted())}};
}

std::vector<std::pair<std::size_t, std::size_t>> load_edges(const Ctx& c, const std::string& ptr,
                                                            std::size_t nodes) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < c.array_size(ptr); ++k) {
    const Json& e = c.at(idx(ptr, k));
    if (!e.is_array() || e.size() != 2 || !is_index(e[0]) || !is_index(e[1]))
      c.fail(idx(ptr, k), "an edge is a pair [parent, child] of node indices");
    std::size_t a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
    if (a >= nodes || b >= nodes) c.fail(idx(ptr, k), "edge endpoint out of range");
    out.emplace_back(a, b);
  }
  return out;
}

/// {"nodes": [{"open": "x", "ideal": [...]} or {"open": "x", "fractions":
/// [{"num": "y", "den": "x"}]}], "edges": [[0, 1]], "root": 0}
IdealDigraph load_digraph(const Ctx& c, const RingPtr& ring, const std::string& ptr) {
  std::size_t n = c.array_size(ptr + "/nodes");
  if (n == 0) c.fail(ptr + "/nodes", "a digraph needs at least one node");
  auto edges = load_edges(c, ptr + "/edges", n);
  long root = c.integer(ptr + "/root", 0);
  if (root < 0 || std::size_t(root) >= n) c.fail(ptr + "/root", "root out of range");

  bool fractional = false;
  for (std::size_t k = 0; k < n; ++k) fractional = fractional || c.has(idx(ptr + "/nodes", k) + "/fractions");
  if (!fractional) {
    IdealDigraph d{ring, {}, edges, std::size_t(root)};
    for (std::size_t k = 0; k < n; ++k) {
      std::string np = idx(ptr + "/nodes", k);
      d.nodes.push_back(DigraphNode{load_open(c, ring, np + "/open"), load_ideal(c, ring, np + "/ideal")});
    }
    return d;
  }
  std::vector<FractionalNode> nodes;
  for (std::size_t k = 0; k < n; ++k) {
    std::string np = idx(ptr + "/nodes", k);
    FractionalNode node{load_open(c, ring, np + "/open"), {}};
    for (const auto& p : load_polys(c, ring, np + "/ideal")) node.generators.push_back({p, ring->poly().one()});
    for (std::size_t j = 0; j < c.array_size(np + "/fractions"); ++j) {
      std::string fp = idx(np + "/fractions", j);
      Polynomial num = load_poly(c, ring, fp + "/num");
      Polynomial den = c.has(fp + "/den") ? load_poly(c, ring, fp + "/den") : ring->poly().one();
      node.generators.push_back({num, den});
    }
    nodes.push_back(std::move(node));
  }
  return c.guard(ptr, [&] { return clear_denominators(ring, nodes, edges, std::size_t(root), c.budget()); });
}

Json digraph_json(const IdealDigraph& d) {
  Json nodes = Json::array();
  for (const auto& n : d.nodes)
    nodes.push_back(Json{{"open", d.ring->format(n.open.f)}, {"ideal", fmt(d.ring, n.ideal.generators())}});
  Json edges = Json::array();
  for (auto [a, b] : d.edges) edges.push_back(Json::array({a, b}));
  return Json{{"nodes", nodes}, {"edges", edges}, {"root", d.root}};
}

Json checks_json(const std::vector<InvariantCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"ok", c.ok}};
    if (!c.ok) j["witness"] = c.witness;
    out.push_back(j);
  }
  return out;
}

void add_failed(const std::vector<InvariantCheck>& checks, Json& witnesses, const std::string& prefix = "") {
  for (const auto& c : checks)
    if (!c.ok) witnesses.push_back(Json{{"check", prefix + c.name}, {"witness", c.witness}});
}

FiniteRingPtr load_finite_ring(const Ctx& c, const std::string& ptr) {
  std::string text = c.string(ptr);
  return c.guard(ptr, [&] { return FiniteRing::parse(text, c.budget()); });
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<Element> element_list(const FiniteRing& ring, const std::string& inside) {
  std::vector<Element> out;
  for (const auto& label : split_top(inside, ','))
    if (!label.empty()) out.push_back(ring.element(label));
  return out;
}

/// "0", "R", "R^2", "R/(2)", "R/(2) + R"; or {"add": [[...]], "action": [[...]]}.
FiniteModule parse_module(const FiniteRingPtr& ring, const std::string& text, const Budget& budget) {
  FiniteModule regular = FiniteModule::regular(ring);
  std::vector<FiniteModule> parts;
  for (const auto& term : split_top(text, '+')) {
    if (term == "0") continue;
    if (term == "R") {
      parts.push_back(regular);
    } else if (term.rfind("R^", 0) == 0) {
      int rank = std::stoi(term.substr(2));
      if (rank < 0) throw ParseError("bad rank in module term '" + term + "'");
      for (int k = 0; k < rank; ++k) parts.push_back(regular);
    } else if (term.rfind("R/(", 0) == 0 && term.back() == ')') {
      auto gens = element_list(*ring, term.substr(3, term.size() - 4));
      parts.push_back(FiniteModule::cyclic(ring, regular.span(gens)));
    } else {
      throw ParseError("bad module term '" + term + "' (expected 0, R, R^k or R/(g, ...))");
    }
  }
  return direct_sum(ring, parts, budget).module;
}

FiniteModule load_module(const Ctx& c, const FiniteRingPtr& ring, const std::string& ptr) {
  const Json& v = c.at(ptr);
  if (v.is_string()) return c.guard(ptr, [&] { return parse_module(ring, v.get<std::string>(), c.budget()); });
  if (!v.is_object() || !v.contains("add") || !v.contains("action"))
    c.fail(ptr, "a module is a descriptor string or {\"add\": table, \"action\": table}");
  auto flat = [&](const std::string& key, std::size_t rows) {
    std::vector<Element> out;
    const Json& t = v[key];
    if (!t.is_array() || t.size() != rows) c.fail(ptr + "/" + key, "table has the wrong number of rows");
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (!t[r].is_array()) c.fail(idx(ptr + "/" + key, r), "expected a row of element indices");
      for (const auto& x : t[r]) {
        if (!is_index(x)) c.fail(idx(ptr + "/" + key, r), "expected element indices");
        out.push_back(x.get<Element>());
      }
    }
    return out;
  };
  std::size_t n = v["add"].is_array() ? v["add"].size() : 0;
  auto add = flat("add", n);
  auto act = flat("action", ring->size());
  return c.guard(ptr, [&] { return FiniteModule::from_tables(ring, add, act, {}, c.budget()); });
}

std::vector<std::string> labels(const FiniteModule& m, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (Element x : xs) out.push_back(m.label(x));
  return out;
}

std::vector<std::string> ring_labels(const FiniteRing& r, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (Element x : xs) out.push_back(r.label(x));
  return out;
}

Json ideal_map_json(const FiniteRing& r, const FiniteModule& m, const IdealMap& map) {
  return Json{{"ideal", ring_labels(r, map.ideal)},
              {"generators", ring_labels(r, map.generators)},
              {"images", labels(m, map.images)}};
}

std::string one_of(const Ctx& c, const std::string& ptr, const std::string& fallback,
                   const std::vector<std::string>& allowed) {
  std::string v = c.string(ptr, fallback);
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    c.fail(ptr, "unknown value '" + v + "' (expected one of " + list + ")");
  }
  return v;
}

// -------------------------------------------------------------- handlers

CommandOutcome cmd_groebner(const Ctx& c, bool execute) {
  RingPtr ring = load_ring(c);
  IdealHandle ideal = load_ideal(c, ring, "/ideal");
  bool canonical = c.boolean("/canonical", ring->inverted().size() > 0);
  if (!execute) return {};
  CommandOutcome out;
  out.config = Json{{"ring", ring_json(ring)}, {"canonical", canonical}};
  auto basis = canonical ? ideal.canonical_basis(c.budget()) : groebner_basis(ideal, false, c.budget());
  out.result = Json{{"basis", fmt(ring, basis)}, {"unit", is_unit_basis(basis)}};
  return out;
}

CommandOutcome cmd_ideal(const Ctx& c, bool execute) {
  RingPtr ring = load_ring(c);
  std::string op = one_of(c, "/op", "member",
                          {"member", "equal", "contains", "unit", "radical-member", "saturate", "colon",
                           "sum", "product", "intersection"});
  IdealHandle a = load_ideal(c, ring, "/ideal");
  bool needs_other = op == "equal" || op == "contains" || op == "sum" || op == "product" ||
                     op == "intersection";
  bool needs_poly = op == "member" || op == "radical-member" || op == "saturate" || op == "colon";
  std::optional<IdealHandle> b;
  std::optional<Polynomial> p;
  if (needs_other) b = load_ideal(c, ring, "/other");
  if (needs_poly) p = load_poly(c, ring, "/poly");
  if (!execute) return {};

  CommandOutcome out;
  out.config = Json{{"ring", ring_json(ring)}, {"op", op}};
  const Budget& bud = c.budget();
  auto boolean = [&](bool v, const std::string& witness) {
    out.result["value"] = v;
    out.pass = v;
    if (!v) out.witnesses.push_back(witness);
  };
  auto ideal_result = [&](const IdealHandle& h) {
    out.result["basis"] = fmt(ring, h.canonical_basis(bud));
  };
  if (op == "member") boolean(ideal_membership(*p, a, bud), ring->format(*p) + " is not in the ideal");
  else if (op == "radical-member") boolean(radical_membership(*p, a, bud), ring->format(*p) + " is not in the radical");
  else if (op == "equal") boolean(ideal_equal(a, *b, bud), "canonical bases differ");
  else if (op == "contains") boolean(ideal_contains(a, *b, bud), "other is not contained in ideal");
  else if (op == "unit") boolean(is_unit_ideal(a, bud), "the ideal is proper");
  else if (op == "saturate") ideal_result(saturate(a, *p, bud));
  else if (op == "colon") ideal_result(colon(a, *p, bud));
  else ideal_result(ideal_combine(parse_combine_op(op), a, *b, bud));
  return out;
}

CommandOutcome cmd_open(const Ctx& c, bool execute) {
  std::string op = one_of(c, "/op", "contains",
                          {"contains", "equal", "empty", "intersect", "cover", "coordinate-ring", "spec",
                           "finite-space"});
  CommandOutcome out;
  const Budget& bud = c.budget();
  if (op == "spec") {
    auto ring = load_finite_ring(c, "/finite_ring");
    if (!execute) return {};
    out.config = Json{{"op", op}, {"finite_ring", ring->name()}};
    Json primes = Json::array();
    for (const auto& p : enumerate_spec(*ring, bud)) primes.push_back(ring_labels(*ring, p));
    out.result = Json{{"primes", primes}, {"count", primes.size()}};
    return out;
  }
  if (op == "finite-space") {
    long points = c.integer("/points");
    if (points < 1 || points > 16) c.fail("/points", "expected 1..16 points");
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t k = 0; k < c.array_size("/relations"); ++k) {
      const Json& e = c.at(idx("/relations", k));
      if (!e.is_array() || e.size() != 2 || !is_index(e[0]) || !is_index(e[1]) ||
          e[0].get<long>() >= points || e[1].get<long>() >= points)
        c.fail(idx("/relations", k), "a relation is a pair [a, b] of points meaning a <= b");
      rel.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    if (!execute) return {};
    auto space = FiniteSpace::from_preorder(std::size_t(points), rel);
    Json opens = Json::array(), connected = Json::array();
    for (auto s : space.opens()) opens.push_back(space.format(s));
    for (auto s : space.connected_opens()) connected.push_back(space.format(s));
    out.config = Json{{"op", op}, {"points", points}};
    out.result = Json{{"opens", opens}, {"connected_opens", connected}};
    return out;
  }
  RingPtr ring = load_ring(c);
  out.config = Json{{"ring", ring_json(ring)}, {"op", op}};
  if (op == "cover") {
    OpenCover cover{load_open(c, ring, "/target", "1"), load_opens(c, ring, "/pieces")};
    if (!execute) return {};
    bool v = cover_check(cover, bud);
    out.result["value"] = v;
    out.pass = v;
    if (!v) out.witnesses.push_back(cover.target.describe() + " is not covered");
    return out;
  }
  DistinguishedOpen a = load_open(c, ring, "/a");
  if (op == "empty" || op == "coordinate-ring") {
    if (!execute) return {};
    if (op == "empty") {
      out.result["value"] = open_is_empty(a, bud);
    } else {
      out.result["ring"] = ring_json(coordinate_ring(a, bud));
    }
    return out;
  }
  DistinguishedOpen b = load_open(c, ring, "/b");
  if (!execute) return {};
  if (op == "intersect") {
    auto u = open_intersect(a, b);
    out.result = Json{{"open", u.describe()}, {"empty", open_is_empty(u, bud)}};
    return out;
  }
  bool v = op == "contains" ? open_contains(a, b, bud) : open_equal(a, b, bud);
  out.result["value"] = v;
  out.pass = v;
  if (!v) out.witnesses.push_back(b.describe() + (op == "contains" ? " is not inside " : " differs from ") + a.describe());
  return out;
}

CommandOutcome cmd_digraph_validate(const Ctx& c, bool execute) {
  std::string mode = one_of(c, "/mode", "validate", {"validate", "count"});
  CommandOutcome out;
  if (mode == "count") {
    if (c.has("/finite_ring")) {
      auto ring = load_finite_ring(c, "/finite_ring");
      if (!execute) return {};
      out.config = Json{{"mode", mode}, {"finite_ring", ring->name()}};
      out.result["count"] = count_digraph_space(*ring, c.budget());
      return out;
    }
    RingPtr ring = load_ring(c);
    auto opens = load_opens(c, ring, "/opens");
    std::vector<IdealHandle> ideals;
    for (std::size_t k = 0; k < c.array_size("/ideals"); ++k) ideals.push_back(load_ideal(c, ring, idx("/ideals", k)));
    if (!execute) return {};
    out.config = Json{{"mode", mode}, {"ring", ring_json(ring)}};
    out.result["count"] = count_digraph_space(ring, opens, ideals, c.budget());
    return out;
  }
  RingPtr ring = load_ring(c);
  IdealDigraph d = load_digraph(c, ring, "/digraph");
  if (!execute) return {};
  auto report = validate_digraph(d, c.budget());
  out.config = Json{{"mode", mode}, {"ring", ring_json(ring)}};
  out.result = Json{{"valid", report.valid()}, {"checks", checks_json(report.checks)}, {"digraph", digraph_json(d)}};
  out.pass = report.valid();
  add_failed(report.checks, out.witnesses);
  return out;
}

CommandOutcome cmd_digraph_eval(const Ctx& c, bool execute) {
  RingPtr ring = load_ring(c);
  IdealDigraph d = load_digraph(c, ring, "/digraph");
  auto opens = load_opens(c, ring, "/opens");
  struct Query {
    DistinguishedOpen open;
    Fraction section;
  };
  std::vector<Query> queries;
  for (std::size_t k = 0; k < c.array_size("/members"); ++k) {
    std::string qp = idx("/members", k);
    Polynomial den = c.has(qp + "/den") ? load_poly(c, ring, qp + "/den") : ring->poly().one();
    queries.push_back(Query{load_open(c, ring, qp + "/open"), Fraction{load_poly(c, ring, qp + "/num"), den}});
  }
  if (!execute) return {};
  const Budget& bud = c.budget();
  require_valid(d, bud);
  CommandOutcome out;
  out.config = Json{{"ring", ring_json(ring)}};
  Json values = Json::array();
  for (const auto& u : opens) {
    IdealHandle v = evaluate_sheaf(d, u, bud);
    values.push_back(Json{{"open", u.describe()}, {"ideal", fmt(v.ring(), v.canonical_basis(bud))}});
  }
  Json members = Json::array();
  for (const auto& q : queries)
    members.push_back(Json{{"open", q.open.describe()},
                           {"section", ring->format(q.section.numerator) + " / " + ring->format(q.section.denominator)},
                           {"member", section_membership(d, q.open, q.section, bud)}});
  out.result = Json{{"values", values}, {"members", members}};
  return out;
}

CommandOutcome cmd_digraph_extract(const Ctx& c, bool execute) {
  std::string kind = one_of(c, "/oracle/kind", "quasi-coherent", {"quasi-coherent", "table", "digraph", "zz"});
  CommandOutcome out;
  const Budget& bud = c.budget();
  if (kind == "zz") {
    long points = c.integer("/oracle/points");
    if (points < 1 || points > 16) c.fail("/oracle/points", "expected 1..16 points");
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t k = 0; k < c.array_size("/oracle/relations"); ++k) {
      const Json& e = c.at(idx("/oracle/relations", k));
      if (!e.is_array() || e.size() != 2 || !is_index(e[0]) || !is_index(e[1]) ||
          e[0].get<long>() >= points || e[1].get<long>() >= points)
        c.fail(idx("/oracle/relations", k), "a relation is a pair [a, b] of points meaning a <= b");
      rel.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    ZZSheafData data{FiniteSpace::from_preorder(std::size_t(points), rel), {}};
    for (std::size_t k = 0; k < c.array_size("/oracle/values"); ++k) {
      std::string vp = idx("/oracle/values", k);
      FiniteSpace::Subset s = 0;
      const Json& pts = c.at(vp + "/open");
      if (!pts.is_array()) c.fail(vp + "/open", "expected a list of points");
      for (const auto& p : pts) {
        if (!is_index(p) || p.get<long>() >= points) c.fail(vp + "/open", "point out of range");
        s |= FiniteSpace::Subset(1) << p.get<unsigned>();
      }
      long n = c.integer(vp + "/n");
      if (n < 0) c.fail(vp + "/n", "expected a non-negative integer");
      data.values[s] = std::uint64_t(n);
    }
    c.guard("/oracle/values", [&] {
      validate_zz_sheaf(data);
      return 0;
    });
    if (!execute) return {};
    auto d = extract_zz_digraph(data);
    Json nodes = Json::array(), edges = Json::array();
    for (const auto& n : d.nodes) nodes.push_back(Json{{"open", data.space.format(n.open)}, {"n", n.n}});
    for (auto [a, b] : d.edges) edges.push_back(Json::array({a, b}));
    bool regenerated = true;
    for (const auto& [u, n] : data.values) {
      if (zz_generated_value(data.space, d, u) != n) {
        regenerated = false;
        out.witnesses.push_back("value over " + data.space.format(u) + " is not regenerated");
      }
    }
    out.config = Json{{"oracle", "zz"}, {"points", points}};
    out.result = Json{{"nodes", nodes}, {"edges", edges}, {"root", d.root}, {"regenerated", regenerated}};
    out.pass = regenerated;
    return out;
  }

  RingPtr ring = load_ring(c);
  auto basis = load_opens(c, ring, "/basis");
  OraclePtr oracle;
  if (kind == "quasi-coherent") {
    oracle = make_quasi_coherent_oracle(load_ideal(c, ring, "/oracle/ideal"), basis);
  } else if (kind == "digraph") {
    oracle = make_digraph_oracle(load_digraph(c, ring, "/oracle/digraph"), basis);
  } else {
    std::vector<std::pair<DistinguishedOpen, IdealHandle>> values;
    for (std::size_t k = 0; k < c.array_size("/oracle/values"); ++k) {
      std::string vp = idx("/oracle/values", k);
      values.emplace_back(load_open(c, ring, vp + "/open"), load_ideal(c, ring, vp + "/ideal"));
    }
    oracle = make_table_oracle(ring, std::move(values), basis);
  }
  if (!execute) return {};
  IdealDigraph d = extract_digraph(*oracle, bud);
  auto report = validate_digraph(d, bud);
  bool certificate = extraction_certificate(d, bud);
  out.config = Json{{"ring", ring_json(ring)}, {"oracle", kind}};
  out.result = Json{{"digraph", digraph_json(d)},
                    {"node_count", d.nodes.size()},
                    {"valid", report.valid()},
                    {"certificate", certificate}};
  if (report.valid()) out.result["quasi_coherent"] = is_quasi_coherent(d, basis, bud);
  out.pass = report.valid() && certificate;
  add_failed(report.checks, out.witnesses);
  if (!certificate) out.witnesses.push_back("an edge does not strictly increase the saturated ideals");
  return out;
}

Json dims_json(const std::vector<std::size_t>& dims) {
  Json out = Json::object();
  for (std::size_t i = 0; i < dims.size(); ++i) out["H" + std::to_string(i)] = dims[i];
  return out;
}

CommandOutcome cmd_cech_affine(const Ctx& c, bool execute) {
  RingPtr ring = load_ring(c);
  IdealHandle ideal = load_ideal(c, ring, "/ideal");
  OpenCover cover{load_open(c, ring, "/target", "1"), load_opens(c, ring, "/cover")};
  AffineWindow w;
  w.pole_order = int(c.integer("/window/pole_order", w.pole_order));
  w.extra_degree = int(c.integer("/window/extra_degree", w.extra_degree));
  if (w.pole_order < 1) c.fail("/window/pole_order", "expected a positive integer");
  if (w.extra_degree < 0) c.fail("/window/extra_degree", "expected a non-negative integer");
  if (!execute) return {};
  const Budget& bud = c.budget();
  auto cech = cech_complex_affine(ideal, cover, w, bud);
  auto dims = cech.complex.cohomology_dims();
  bool vanishing = affine_vanishing_check(ideal, cover, w, bud);
  CommandOutcome out;
  out.config = Json{{"ring", ring_json(ring)},
                    {"window", Json{{"pole_order", w.pole_order}, {"extra_degree", w.extra_degree}}},
                    {"window_description", cech.complex.window}};
  out.result = Json{{"cochain_dims", cech.complex.dims},
                    {"cohomology", dims_json(dims)},
                    {"target_dim", cech.target_dim},
                    {"squares_to_zero", cech.complex.squares_to_zero()},
                    {"vanishing", vanishing},
                    {"warnings", cech.complex.warnings}};
  out.pass = vanishing;
  if (!vanishing) out.witnesses.push_back("higher cohomology or H0 mismatch within the window");
  return out;
}

CommandOutcome cmd_cech_projective(const Ctx& c, bool execute) {
  TwistData t;
  t.n = int(c.integer("/n", 1));
  t.d = int(c.integer("/d", 0));
  t.window = int(c.integer("/window", 0));
  if (t.window < 0) c.fail("/window", "expected a non-negative integer");
  std::optional<RingPtr> forms_ring;
  std::vector<Polynomial> forms;
  if (c.has("/linear_forms")) {
    if (t.n < 1 || t.n > 4) c.fail("/n", "expected 1..4");
    std::vector<std::string> vars;
    for (int i = 0; i <= t.n; ++i) vars.push_back("x" + std::to_string(i));
    Field field = c.guard("/field", [&] { return Field::parse(c.string("/field", "q")); });
    forms_ring = PresentedRing::make(field, vars);
    forms = load_polys(c, *forms_ring, "/linear_forms");
  }
  int pole = int(c.integer("/pole_order", std::abs(t.d) + t.n + 1));
  if (!execute) return {};
  CommandOutcome out;
  if (forms_ring) {
    auto complex = projective_chart_complex((*forms_ring)->field(), t.n, t.d, forms, pole, c.budget());
    out.config = Json{{"n", t.n}, {"d", t.d}, {"pole_order", pole}, {"linear_forms", fmt(*forms_ring, forms)},
                      {"window_description", complex.window}};
    out.result = Json{{"cohomology", dims_json(complex.cohomology_dims())},
                      {"squares_to_zero", complex.squares_to_zero()}};
    return out;
  }
  auto res = twisted_cohomology_dims(t);
  Json dims = Json::object();
  for (auto [i, v] : res.dims) dims["H" + std::to_string(i)] = v;
  out.config = Json{{"n", t.n}, {"d", t.d}, {"window", res.window}, {"window_description", res.complex.window}};
  out.result = Json{{"cohomology", dims}, {"squares_to_zero", res.complex.squares_to_zero()}};
  return out;
}

CommandOutcome cmd_baer(const Ctx& c, bool execute) {
  auto ring = load_finite_ring(c, "/ring");
  std::string op = one_of(c, "/op", "test",
                          {"test", "step", "chain", "envelope", "resolution", "ideals", "homs"});
  FiniteModule m = c.has("/module") ? load_module(c, ring, "/module") : FiniteModule::regular(ring);
  long length = c.integer("/length", op == "resolution" ? 3 : 1);
  long bound = c.integer("/bound", 256);
  if (length < 0) c.fail("/length", "expected a non-negative integer");
  if (bound < 1 || bound > 256) c.fail("/bound", "expected 1..256");
  std::vector<Element> ideal_gens;
  if (op == "homs") {
    for (const auto& s : c.strings("/ideal"))
      ideal_gens.push_back(c.guard("/ideal", [&] { return ring->element(s); }));
  }
  if (!execute) return {};
  const Budget& bud = c.budget();
  CommandOutcome out;
  out.config = Json{{"ring", ring->name()}, {"op", op}, {"module_size", m.size()}};
  if (c.has("/module") && c.at("/module").is_string()) out.config["module"] = c.at("/module");

  if (op == "test") {
    auto r = baer_test(m, bud);
    out.result = Json{{"injective", r.injective}, {"ideals_checked", r.ideals_checked}, {"maps_checked", r.maps_checked}};
    out.pass = r.injective;
    if (r.witness) out.witnesses.push_back(ideal_map_json(*ring, m, *r.witness));
  } else if (op == "step") {
    auto s = baer_step(m, bud);
    Json ledger = Json::array();
    for (const auto& e : s.ledger) ledger.push_back(ideal_map_json(*ring, m, e));
    out.result = Json{{"size", s.output.size()},
                      {"copies", s.output.copy_count()},
                      {"materialized", s.materialized.has_value()},
                      {"postcondition", s.postcondition},
                      {"ledger", ledger}};
    out.pass = s.postcondition;
    if (!s.postcondition) out.witnesses.push_back(s.failure);
  } else if (op == "chain") {
    out.config["length"] = length;
    auto ch = baer_chain(m, std::size_t(length), bud);
    Json sizes = Json::array();
    for (const auto& st : ch.stages) sizes.push_back(st.size());
    if (ch.last) sizes.push_back(ch.last->size());
    Json ext = Json::array();
    for (bool b : ch.stage_extension) ext.push_back(b);
    out.result = Json{{"stage_sizes", sizes},
                      {"stage_extension", ext},
                      {"monotone", ch.monotone},
                      {"built_length", ch.built_length},
                      {"holds", ch.holds()}};
    if (ch.stopped_at) {
      out.result["stopped_at"] = *ch.stopped_at;
      out.witnesses.push_back(ch.stop_reason);
    }
    out.pass = ch.holds();
  } else if (op == "envelope") {
    out.config["bound"] = bound;
    auto env = injective_envelope_bruteforce(m, std::size_t(bound), bud);
    out.result = Json{{"found", env.envelope.has_value()},
                      {"searched_rank", env.searched_rank},
                      {"minimal_below", env.unsearched_lower_bound},
                      {"candidates", env.candidates}};
    if (env.envelope) {
      out.result["size"] = env.envelope->size();
      out.result["injective"] = baer_test(*env.envelope, bud).injective;
      out.result["embedding"] = labels(*env.envelope, env.embedding);
    }
    out.pass = env.envelope.has_value();
    if (!env.envelope) out.witnesses.push_back("no injective module within the bound contains M");
  } else if (op == "resolution") {
    out.config["length"] = length;
    out.config["bound"] = bound;
    auto res = injective_resolution(m, std::size_t(length), std::size_t(bound), bud);
    Json sizes = Json::array();
    for (const auto& t : res.terms) sizes.push_back(t.size());
    out.result = Json{{"term_sizes", sizes}, {"terminated", res.terminated}};
    if (res.missing_at) {
      out.result["missing_at"] = *res.missing_at;
      out.witnesses.push_back("no envelope found at stage " + std::to_string(*res.missing_at));
    }
    out.pass = !res.missing_at;
  } else if (op == "ideals") {
    auto ideals = enumerate_ideals(*ring, bud);
    auto rep = noetherian_witness(*ring, ideals, bud);
    Json list = Json::array();
    for (std::size_t k = 0; k < ideals.size(); ++k)
      list.push_back(Json{{"elements", ring_labels(*ring, ideals[k])},
                          {"generators", ring_labels(*ring, rep.generators[k])}});
    out.result = Json{{"count", ideals.size()},
                      {"ideals", list},
                      {"longest_strict_chain", rep.longest_strict_chain},
                      {"maximal", rep.maximal},
                      {"holds", rep.holds()}};
    out.pass = rep.holds();
  } else {
    auto homs = hom_from_ideal(*ring, ideal_gens, m, bud);
    Json maps = Json::array();
    for (const auto& h : homs.maps) maps.push_back(labels(m, h));
    out.result = Json{{"ideal", ring_labels(*ring, homs.ideal)}, {"count", homs.maps.size()}, {"maps", maps}};
  }
  return out;
}

CommandOutcome cmd_etale(const Ctx& c, bool execute) {
  long depth = c.integer("/depth", 3);
  if (depth < 0) c.fail("/depth", "expected a non-negative integer");
  Field field = c.guard("/field", [&] { return Field::parse(c.string("/field", "q")); });
  if (field.characteristic() == 2) c.fail("/field", "the tower needs characteristic other than 2");
  ExponentRule rule = c.guard("/exponent_rule", [&] { return parse_exponent_rule(c.string("/exponent_rule", "power")); });
  if (!execute) return {};
  auto rep = run_tower_suite(int(depth), field, rule, c.budget());
  CommandOutcome out;
  out.config = Json{{"depth", depth}, {"field", field.to_string()}, {"exponent_rule", to_string(rule)}};
  Json levels = Json::array();
  for (const auto& p : rep.properness) levels.push_back(Json{{"level", p.level}, {"checks", checks_json(p.checks)}});
  Json maps = Json::array();
  for (const auto& m : rep.cover_maps)
    maps.push_back(Json{{"source", m.source}, {"target", m.target}, {"checks", checks_json(m.checks)}});
  Json strict = Json::array();
  for (const auto& s : rep.strictness) strict.push_back(Json{{"level", s.level}, {"checks", checks_json(s.checks)}});
  out.result = Json{{"passed", rep.passed()},
                    {"strict_inclusions", rep.strict_inclusions},
                    {"chain", rep.chain},
                    {"properness", levels},
                    {"cover_maps", maps},
                    {"strictness", strict}};
  if (rep.failed_level) {
    out.result["failed_level"] = *rep.failed_level;
    out.witnesses.push_back(Json{{"level", *rep.failed_level}, {"failure", rep.failure}});
  }
  out.pass = rep.passed();
  return out;
}

CommandOutcome cmd_suite_unlinked(const Ctx&, bool) {
  throw CapabilityError("the acceptance suite is not linked into this build");
}

}  // namespace

namespace detail {

std::vector<CommandInfo> builtin_commands() {
  auto q = [](std::vector<std::string> vars = {"x"}) { return Json{{"field", "q"}, {"vars", vars}}; };
  std::vector<CommandInfo> t;
  t.push_back({"groebner", "reduced Groebner basis of an ideal", {"groebner_basis"},
               {Json{{"ring", q({"x", "y"})}, {"ideal", {"x^2 - y", "x*y - 1"}}}},
               cmd_groebner});
  t.push_back({"ideal", "membership, equality, radical and combination queries",
               {"ideal_membership", "ideal_equal", "ideal_combine", "saturate", "radical_membership"},
               {Json{{"ring", q({"x", "y"})}, {"op", "member"}, {"ideal", {"x^2", "y"}}, {"poly", "x^2*y + y"}},
                Json{{"ring", q()}, {"op", "equal"}, {"ideal", {"x^2 - 1", "x - 1"}}, {"other", {"x - 1"}}},
                Json{{"ring", q()}, {"op", "intersection"}, {"ideal", {"x"}}, {"other", {"x - 1"}}},
                Json{{"ring", q({"x", "y"})}, {"op", "saturate"}, {"ideal", {"x*y"}}, {"poly", "x"}},
                Json{{"ring", q()}, {"op", "radical-member"}, {"ideal", {"x^3"}}, {"poly", "x"}}},
               cmd_ideal});
  t.push_back({"open", "distinguished opens, covers, coordinate rings and finite spectra",
               {"open_contains", "open_intersect", "cover_check", "coordinate_ring", "enumerate_spec"},
               {Json{{"ring", q()}, {"op", "contains"}, {"a", "x"}, {"b", "x^2 - x"}},
                Json{{"ring", q()}, {"op", "intersect"}, {"a", "x"}, {"b", "x - 1"}},
                Json{{"ring", q()}, {"op", "cover"}, {"target", "1"}, {"pieces", {"x", "x - 1"}}},
                Json{{"ring", q()}, {"op", "coordinate-ring"}, {"a", "x"}},
                Json{{"op", "spec"}, {"finite_ring", "Z/12"}},
                Json{{"op", "finite-space"}, {"points", 2}, {"relations", Json::array({Json::array({0, 1})})}}},
               cmd_open});
  Json g0{{"nodes", Json::array({Json{{"open", "1"}, {"ideal", Json::array()}}, Json{{"open", "x"}, {"ideal", {"1"}}}})},
          {"edges", Json::array({Json::array({0, 1})})},
          {"root", 0}};
  t.push_back({"digraph-validate", "validate a digraph of ideals or count digraph spaces",
               {"validate_digraph", "clear_denominators", "count_digraph_space"},
               {Json{{"ring", q()}, {"digraph", g0}},
                Json{{"ring", q({"x", "y"})},
                     {"digraph", Json{{"nodes", Json::array({Json{{"open", "1"}, {"ideal", Json::array()}},
                                                             Json{{"open", "x*y"},
                                                                  {"fractions", Json::array({Json{{"num", "y"}, {"den", "x"}}})}}})},
                                      {"edges", Json::array({Json::array({0, 1})})}}}},
                Json{{"mode", "count"}, {"finite_ring", "Z/6"}}},
               cmd_digraph_validate});
  t.push_back({"digraph-eval", "evaluate the generated sheaf and test section membership",
               {"evaluate_sheaf", "section_membership"},
               {Json{{"ring", q()},
                     {"digraph", g0},
                     {"opens", {"1", "x", "x - 1"}},
                     {"members", Json::array({Json{{"open", "x - 1"}, {"num", "x"}}})}}},
               cmd_digraph_eval});
  t.push_back({"digraph-extract", "extract a digraph from a sheaf oracle",
               {"extract_digraph", "is_quasi_coherent", "extract_zz_digraph"},
               {Json{{"ring", q()}, {"basis", {"x", "x - 1"}}, {"oracle", Json{{"kind", "digraph"}, {"digraph", g0}}}},
                Json{{"ring", q()}, {"basis", {"x", "x - 1"}}, {"oracle", Json{{"kind", "quasi-coherent"}, {"ideal", {"x^2 - 1"}}}}},
                Json{{"oracle", Json{{"kind", "zz"},
                                     {"points", 2},
                                     {"relations", Json::array({Json::array({0, 1})})},
                                     {"values", Json::array({Json{{"open", {0}}, {"n", 2}}, Json{{"open", {0, 1}}, {"n", 4}}})}}}}},
               cmd_digraph_extract});
  t.push_back({"cech-affine", "windowed Cech complex of an ideal sheaf on an affine cover",
               {"cech_complex_affine", "affine_vanishing_check"},
               {Json{{"ring", q()}, {"ideal", {"x"}}, {"target", "1"}, {"cover", {"x", "x - 1"}}}},
               cmd_cech_affine});
  t.push_back({"cech-projective", "dimensions of H^i(P^n, O(d))", {"twisted_cohomology_dims"},
               {Json{{"n", 1}, {"d", -2}}, Json{{"n", 1}, {"d", 2}, {"linear_forms", {"x0", "x1", "x0 + x1"}}}},
               cmd_cech_projective});
  t.push_back({"baer", "Baer criterion, Baer steps and chains, injective envelopes over finite rings",
               {"baer_test", "baer_step", "baer_chain", "injective_envelope_bruteforce", "enumerate_ideals",
                "noetherian_witness", "direct_sum", "hom_from_ideal"},
               {Json{{"ring", "Z/4"}, {"module", "R/(2)"}, {"op", "test"}},
                Json{{"ring", "Z/4"}, {"module", "0"}, {"op", "step"}},
                Json{{"ring", "Z/4"}, {"module", "R/(2)"}, {"op", "chain"}, {"length", 2}},
                Json{{"ring", "Z/4"}, {"module", "R/(2)"}, {"op", "envelope"}},
                Json{{"ring", "Z/12"}, {"op", "ideals"}},
                Json{{"ring", "Z/4"}, {"module", "R/(2) + R"}, {"op", "homs"}, {"ideal", {"2"}}}},
               cmd_baer});
  t.push_back({"etale", "verify the tower of double covers of the punctured line",
               {"tower_ring", "verify_cover_map", "pullback_strictness", "properness_and_maximality",
                "run_tower_suite"},
               {Json{{"depth", 3}, {"field", "q"}}},
               cmd_etale});
  t.push_back({"suite", "run the acceptance criteria", {}, {}, cmd_suite_unlinked});
  return t;
}

}  // namespace detail

}  // namespace noether
