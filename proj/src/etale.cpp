#include "noether/etale.hpp"

#include <algorithm>

#include "noether/error.hpp"

namespace noether {

namespace {

Polynomial x_pow(const PolyRing& r, long e) { return r.monomial(Exponents{std::int32_t(e)}, Coeff(1)); }

Polynomial x_pow_minus(const PolyRing& r, long e, long c) {
  return r.sub(x_pow(r, e), r.constant(r.field().from_int(c)));
}

std::string format_in(const RingPtr& ring, const Polynomial& p) { return ring->format(p); }

InvariantCheck make_check(std::string name, bool ok, std::string witness = {}) {
  return InvariantCheck{std::move(name), ok, ok ? std::string() : std::move(witness)};
}

bool all_ok(const std::vector<InvariantCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
}

std::string first_failure(const std::vector<InvariantCheck>& checks) {
  for (const auto& c : checks)
    if (!c.ok) return c.name + ": " + c.witness;
  return {};
}

}  // namespace

ExponentRule parse_exponent_rule(const std::string& name) {
  if (name == "power") return ExponentRule::power;
  if (name == "literal") return ExponentRule::literal;
  throw ParseError("unknown exponent rule '" + name + "' (expected power or literal)");
}

std::string to_string(ExponentRule rule) { return rule == ExponentRule::power ? "power" : "literal"; }

std::vector<long> deleted_exponents(int level, ExponentRule rule) {
  std::vector<long> out;
  for (int j = 1; j <= level; ++j) out.push_back(rule == ExponentRule::power ? 1L << j : 2L * j);
  return out;
}

TowerLevel tower_ring(int level, const Field& field, ExponentRule rule) {
  if (level < 0) throw DomainError("tower level must be non-negative");
  if (field.characteristic() == 2) throw DomainError("the tower needs a field of characteristic other than 2");
  if (level > 30) throw DomainError("tower level too large for machine exponents");
  PolyRing poly(field, 1);
  std::vector<Polynomial> inverted{x_pow(poly, 1)};
  auto exps = deleted_exponents(level, rule);
  for (long e : exps) inverted.push_back(x_pow_minus(poly, e, 2));
  RingPtr ring = PresentedRing::make(field, {"x"}, MonomialOrder::degrevlex(), {}, inverted);
  IdealHandle ideal(ring, {x_pow_minus(poly, 1, 1)});
  return TowerLevel{level, rule, ring, ideal, exps};
}

Polynomial pull_back(const PolyRing& ring, const Polynomial& p, int steps) {
  Polynomial square = x_pow(ring, 2);
  Polynomial out = p;
  for (int k = 0; k < steps; ++k) out = ring.substitute(out, std::span(&square, 1), ring);
  return out;
}

// ---------------------------------------------------------------- cover maps

bool CoverMapReport::ok() const { return all_ok(checks); }
bool LevelReport::ok() const { return all_ok(checks); }

CoverMapReport verify_cover_map(const TowerLevel& source, const TowerLevel& target,
                                const Budget& budget) {
  if (target.level != source.level + 1)
    throw DomainError("cover maps go between consecutive levels (got " +
                      std::to_string(source.level) + " -> " + std::to_string(target.level) + ")");
  if (!(source.ring->field() == target.ring->field()) || source.rule != target.rule)
    throw DomainError("cover map levels use different fields or exponent rules");
  const PolyRing& r = target.ring->poly();
  CoverMapReport out{source.level, target.level, {}};

  std::string bad;
  for (const auto& g : source.ring->inverted()) {
    Polynomial image = pull_back(r, g, 1);
    if (!is_unit_ideal(IdealHandle(target.ring, {image}), budget)) {
      bad = format_in(target.ring, g) + " maps to " + format_in(target.ring, image) +
            ", not a unit at level " + std::to_string(target.level);
      break;
    }
  }
  out.checks.push_back(make_check("well_defined", bad.empty(), bad));

  Polynomial jac = r.derivative(x_pow(r, 2), 0);
  out.checks.push_back(make_check("unramified", is_unit_ideal(IdealHandle(target.ring, {jac}), budget),
                                  "the derivative " + format_in(target.ring, jac) +
                                      " is not a unit"));

  // The composite level 0 -> target is x -> x^(2^target), and x stays a unit.
  Polynomial x = x_pow(r, 1);
  Polynomial composite = pull_back(r, x, target.level);
  bool compatible = composite == x_pow(r, 1L << target.level) &&
                    is_unit_ideal(IdealHandle(target.ring, {composite}), budget);
  out.checks.push_back(make_check("level0_compatible", compatible,
                                  "x maps to " + format_in(target.ring, composite)));
  return out;
}

// ------------------------------------------------------------ level checks

LevelReport pullback_strictness(const TowerLevel& level, const Budget& budget) {
  if (level.level < 1) throw DomainError("pullback strictness needs level >= 1");
  const RingPtr& ring = level.ring;
  const PolyRing& r = ring->poly();
  LevelReport out{level.level, {}};

  Polynomial x_minus_1 = x_pow_minus(r, 1, 1);
  std::vector<Polynomial> pulled;
  bool functorial = true;
  for (int m = 0; m < level.level; ++m) {
    int steps = level.level - m;
    Polynomial p = pull_back(r, x_minus_1, steps);
    functorial = functorial && p == x_pow_minus(r, 1L << steps, 1);
    pulled.push_back(p);
  }
  out.checks.push_back(make_check("functorial", functorial,
                                  "iterated pullback differs from x -> x^(2^k)"));

  IdealHandle j(ring, pulled);
  IdealHandle x2(ring, {x_pow_minus(r, 2, 1)});
  out.checks.push_back(make_check("generated_by_x2_minus_1", ideal_equal(j, x2, budget),
                                  "J differs from (x^2 - 1)"));
  out.checks.push_back(make_check("contained", ideal_contains(level.ideal, j, budget),
                                  "J is not inside (x - 1)"));
  out.checks.push_back(make_check("strict", !ideal_equal(j, level.ideal, budget),
                                  "J equals (x - 1)"));

  Polynomial x_plus_1 = r.add(x_pow(r, 1), r.one());
  bool witness = !ideal_membership(x_plus_1, j, budget) &&
                 ideal_membership(r.mul(x_minus_1, x_plus_1), j, budget) &&
                 !is_unit_ideal(IdealHandle(ring, {x_plus_1}), budget);
  out.checks.push_back(make_check("witness_x_plus_1", witness,
                                  "x + 1 does not separate J from (x - 1)"));
  return out;
}

LevelReport properness_and_maximality(const TowerLevel& level, const Budget& budget) {
  const RingPtr& ring = level.ring;
  const PolyRing& r = ring->poly();
  const Field& k = r.field();
  LevelReport out{level.level, {}};

  out.checks.push_back(make_check("proper", !is_unit_ideal(level.ideal, budget),
                                  "(x - 1) is the unit ideal"));

  const auto& basis = level.ideal.canonical_basis(budget);
  bool linear = basis.size() == 1 && r.degree_univariate(basis.front()) == 1;
  out.checks.push_back(make_check("quotient_is_field", linear,
                                  "canonical basis of (x - 1) is not a single linear form"));

  std::string at_one, at_minus_one;
  const Coeff one = k.from_int(1), minus_one = k.from_int(-1);
  for (const auto& g : ring->inverted()) {
    if (at_one.empty() && k.is_zero(r.evaluate(g, std::span(&one, 1))))
      at_one = format_in(ring, g) + " vanishes at x = 1";
    if (at_minus_one.empty() && k.is_zero(r.evaluate(g, std::span(&minus_one, 1))))
      at_minus_one = format_in(ring, g) + " vanishes at x = -1";
  }
  out.checks.push_back(make_check("maximal", at_one.empty(), at_one));
  out.checks.push_back(make_check("minus_one_not_deleted", at_minus_one.empty(), at_minus_one));
  return out;
}

// --------------------------------------------------------------------- suite

TowerSuiteReport run_tower_suite(int depth, const Field& field, ExponentRule rule,
                                 const Budget& budget) {
  if (depth < 0) throw DomainError("tower depth must be non-negative");
  if (depth > budget.max_tower_depth)
    throw ResourceError("max_tower_depth", "tower depth " + std::to_string(depth) +
                                               " exceeds the bound " +
                                               std::to_string(budget.max_tower_depth));
  TowerSuiteReport out;
  out.depth = depth;
  out.field = field.to_string();
  out.rule = rule;

  auto fail = [&](int level, const std::string& what) {
    out.failed_level = level;
    out.failure = what;
  };

  std::optional<TowerLevel> previous;
  for (int n = 0; n <= depth; ++n) {
    TowerLevel current = tower_ring(n, field, rule);
    out.properness.push_back(properness_and_maximality(current, budget));
    if (!out.properness.back().ok()) {
      fail(n, first_failure(out.properness.back().checks));
      return out;
    }
    if (previous) {
      out.cover_maps.push_back(verify_cover_map(*previous, current, budget));
      if (!out.cover_maps.back().ok()) {
        fail(n, first_failure(out.cover_maps.back().checks));
        return out;
      }
      out.strictness.push_back(pullback_strictness(current, budget));
      if (!out.strictness.back().ok()) {
        fail(n, first_failure(out.strictness.back().checks));
        return out;
      }
    }
    previous = std::move(current);
  }

  // Strict chain in the top ring.
  const RingPtr& top = previous->ring;
  const PolyRing& r = top->poly();
  auto chain_ideal = [&](int k) { return IdealHandle(top, {x_pow_minus(r, 1L << k, 1)}); };
  out.chain.push_back("(" + format_in(top, x_pow_minus(r, 1L << depth, 1)) + ")");
  for (int k = depth; k >= 1; --k) {
    IdealHandle small = chain_ideal(k), big = chain_ideal(k - 1);
    if (!ideal_contains(big, small, budget) || ideal_equal(big, small, budget)) {
      fail(depth, "(" + format_in(top, x_pow_minus(r, 1L << k, 1)) + ") is not strictly inside (" +
                      format_in(top, x_pow_minus(r, 1L << (k - 1), 1)) + ")");
      return out;
    }
    ++out.strict_inclusions;
    out.chain.push_back("(" + format_in(top, x_pow_minus(r, 1L << (k - 1), 1)) + ")");
  }
  return out;
}

}  // namespace noether
