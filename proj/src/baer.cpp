#include "noether/baer.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "noether/error.hpp"

namespace noether {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::vector<IdealMap> all_ideal_maps(const FiniteModule& module, const Budget& budget) {
  const FiniteRingPtr& ring = module.ring();
  FiniteModule regular = FiniteModule::regular(ring);
  std::vector<IdealMap> out;
  for (const ElementSet& ideal : enumerate_ideals(*ring, budget)) {
    auto gens = regular.greedy_generators(ideal);
    IdealHoms homs = hom_from_ideal(*ring, gens, module, budget);
    for (auto& map : homs.maps) out.push_back(IdealMap{homs.ideal, gens, std::move(map)});
  }
  return out;
}

}  // namespace

std::optional<Element> find_extension(const FiniteModule& module, const IdealMap& map) {
  for (Element m = 0; m < module.size(); ++m) {
    bool ok = true;
    for (std::size_t k = 0; k < map.ideal.size() && ok; ++k)
      ok = module.scale(map.ideal[k], m) == map.images[k];
    if (ok) return m;
  }
  return std::nullopt;
}

BaerTestResult baer_test(const FiniteModule& module, const Budget& budget) {
  const FiniteRingPtr& ring = module.ring();
  FiniteModule regular = FiniteModule::regular(ring);
  BaerTestResult out;
  out.injective = true;
  for (const ElementSet& ideal : enumerate_ideals(*ring, budget)) {
    ++out.ideals_checked;
    auto gens = regular.greedy_generators(ideal);
    IdealHoms homs = hom_from_ideal(*ring, gens, module, budget);
    for (auto& map : homs.maps) {
      ++out.maps_checked;
      IdealMap im{homs.ideal, gens, std::move(map)};
      if (!find_extension(module, im)) {
        out.injective = false;
        out.witness = std::move(im);
        return out;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ PushoutModule

PushoutModule::PushoutModule(FiniteModule base, std::vector<IdealMap> copies)
    : base_(std::move(base)) {
  const FiniteRing& r = *base_.ring();
  size_ = base_.size();
  for (auto& map : copies) {
    if (map.images.size() != map.ideal.size())
      throw ValidationError("pushout copy: map table does not match its ideal");
    Copy c;
    c.in_ideal.assign(r.size(), 0);
    c.image.assign(r.size(), 0);
    for (std::size_t k = 0; k < map.ideal.size(); ++k) {
      c.in_ideal.at(map.ideal[k]) = 1;
      if (map.images[k] >= base_.size()) throw ValidationError("pushout copy: image out of range");
      c.image[map.ideal[k]] = map.images[k];
    }
    c.transversal.assign(r.size(), Element(-1));
    for (Element a = 0; a < r.size(); ++a) {
      if (c.transversal[a] != Element(-1)) continue;
      c.reps.push_back(a);
      for (Element x : map.ideal) c.transversal[r.add(a, x)] = a;
    }
    c.map = std::move(map);
    size_ = saturating_mul(size_, c.reps.size());
    copies_.push_back(std::move(c));
  }
}

PushoutModule::Vec PushoutModule::normalize(Element m, Vec raw) const {
  const FiniteRing& r = *ring();
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    const Copy& c = copies_[i];
    Element t = c.transversal[raw[i + 1]];
    Element d = r.add(raw[i + 1], r.neg(t));
    m = base_.add(m, c.image[d]);
    raw[i + 1] = t;
  }
  raw[0] = m;
  return raw;
}

PushoutModule::Vec PushoutModule::add(const Vec& a, const Vec& b) const {
  const FiniteRing& r = *ring();
  Vec raw(a.size());
  for (std::size_t i = 1; i < a.size(); ++i) raw[i] = r.add(a[i], b[i]);
  return normalize(base_.add(a[0], b[0]), std::move(raw));
}

PushoutModule::Vec PushoutModule::scale(Element s, const Vec& a) const {
  const FiniteRing& r = *ring();
  Vec raw(a.size());
  for (std::size_t i = 1; i < a.size(); ++i) raw[i] = r.mul(s, a[i]);
  return normalize(base_.scale(s, a[0]), std::move(raw));
}

PushoutModule::Vec PushoutModule::neg(const Vec& a) const {
  const FiniteRing& r = *ring();
  Vec raw(a.size());
  for (std::size_t i = 1; i < a.size(); ++i) raw[i] = r.neg(a[i]);
  return normalize(base_.neg(a[0]), std::move(raw));
}

PushoutModule::Vec PushoutModule::embed(Element m) const {
  Vec v = zero();
  v[0] = m;
  return v;
}

PushoutModule::Vec PushoutModule::extension_element(std::size_t i) const {
  Vec raw = zero();
  raw.at(i + 1) = ring()->one();
  return normalize(0, std::move(raw));
}

bool PushoutModule::is_normal(const Vec& a) const {
  if (a.size() != 1 + copies_.size() || a[0] >= base_.size()) return false;
  for (std::size_t i = 0; i < copies_.size(); ++i)
    if (a[i + 1] >= ring()->size() || copies_[i].transversal[a[i + 1]] != a[i + 1]) return false;
  return true;
}

std::string PushoutModule::label(const Vec& a) const {
  std::string s = "(" + base_.label(a[0]);
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    if (copies_[i].reps.size() == 1) continue;
    s += i == 0 ? "; " : ", ";
    s += ring()->label(a[i + 1]);
  }
  return s + ")";
}

Element PushoutModule::index_of(const Vec& a) const {
  std::uint64_t idx = a[0];
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    const auto& reps = copies_[i].reps;
    auto pos = std::lower_bound(reps.begin(), reps.end(), a[i + 1]) - reps.begin();
    idx = idx * reps.size() + static_cast<std::uint64_t>(pos);
  }
  return static_cast<Element>(idx);
}

std::vector<PushoutModule::Vec> PushoutModule::elements(const Budget& budget) const {
  const std::uint64_t limit = std::uint64_t(budget.max_module_size) * 256;
  if (size_ > limit)
    throw ResourceError("max_module_size", "pushout module of size " + std::to_string(size_) +
                                               " is too large to enumerate");
  std::vector<Vec> out;
  out.reserve(size_);
  for (std::uint64_t idx = 0; idx < size_; ++idx) {
    Vec v(1 + copies_.size());
    std::uint64_t rest = idx;
    for (std::size_t i = copies_.size(); i-- > 0;) {
      const auto& reps = copies_[i].reps;
      v[i + 1] = reps[rest % reps.size()];
      rest /= reps.size();
    }
    v[0] = static_cast<Element>(rest);
    out.push_back(std::move(v));
  }
  return out;
}

FiniteModule PushoutModule::materialize(const Budget& budget) const {
  if (size_ > budget.max_module_size)
    throw ResourceError("max_module_size", "pushout module of size " + std::to_string(size_) +
                                               " exceeds the bound " +
                                               std::to_string(budget.max_module_size));
  auto elems = elements(budget);
  const std::size_t n = elems.size();
  const std::size_t rs = ring()->size();
  std::vector<Element> add_t(n * n), act(rs * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(label(elems[a]));
    for (std::size_t b = 0; b < n; ++b) add_t[a * n + b] = index_of(add(elems[a], elems[b]));
    for (Element r = 0; r < rs; ++r) act[r * n + a] = index_of(scale(r, elems[a]));
  }
  return make_module(ring(), n, std::move(add_t), std::move(act), std::move(labels));
}

// ------------------------------------------------------------------ steps

bool check_step_extensions(const BaerStepResult& step, std::string* failure) {
  const PushoutModule& p = step.output;
  auto fail = [&](const std::string& why) {
    if (failure) *failure = why;
    return false;
  };
  for (std::size_t i = 0; i < step.ledger.size(); ++i) {
    const IdealMap& map = step.ledger[i];
    auto e = p.extension_element(i);
    for (std::size_t k = 0; k < map.ideal.size(); ++k)
      if (p.scale(map.ideal[k], e) != p.embed(map.images[k]))
        return fail("ledger entry " + std::to_string(i) + ": r·e differs from the image of r = " +
                    p.ring()->label(map.ideal[k]));
  }
  const FiniteModule& m = step.input;
  std::set<PushoutModule::Vec> seen;
  for (Element a = 0; a < m.size(); ++a) {
    auto ea = p.embed(a);
    if (!seen.insert(ea).second) return fail("embedding is not injective at " + m.label(a));
    for (Element b = 0; b < m.size(); ++b)
      if (p.embed(m.add(a, b)) != p.add(ea, p.embed(b)))
        return fail("embedding is not additive at " + m.label(a) + " + " + m.label(b));
    for (Element r = 0; r < m.ring()->size(); ++r)
      if (p.embed(m.scale(r, a)) != p.scale(r, ea))
        return fail("embedding is not R-linear at " + m.label(a));
  }
  return true;
}

BaerStepResult baer_step(const FiniteModule& module, const Budget& budget) {
  auto ledger = all_ideal_maps(module, budget);
  if (ledger.size() > budget.max_module_size)
    throw ResourceError("max_module_size",
                        "Baer step needs " + std::to_string(ledger.size()) +
                            " (ideal, map) copies; bound " + std::to_string(budget.max_module_size));
  BaerStepResult out{module, PushoutModule(module, ledger), std::nullopt, ledger, false, {}};
  if (out.output.size() <= budget.max_module_size) out.materialized = out.output.materialize(budget);
  out.postcondition = check_step_extensions(out, &out.failure);
  return out;
}

// ------------------------------------------------------------------ chains

bool BaerChain::holds() const {
  if (stopped_at || !monotone || built_length != requested_length) return false;
  return std::all_of(stage_extension.begin(), stage_extension.end(), [](bool b) { return b; });
}

BaerChain baer_chain(const FiniteModule& module, std::size_t length, const Budget& budget) {
  BaerChain chain;
  chain.requested_length = length;
  chain.stages.push_back(module);
  for (std::size_t k = 0; k < length; ++k) {
    std::optional<BaerStepResult> step;
    try {
      step = baer_step(chain.stages.back(), budget);
    } catch (const ResourceError& e) {
      chain.stopped_at = k;
      chain.stop_reason = e.what();
      break;
    }
    chain.stage_extension.push_back(step->postcondition);
    if (step->materialized) {
      ModuleMap emb(chain.stages.back().size());
      for (Element m = 0; m < emb.size(); ++m) emb[m] = step->output.index_of(step->output.embed(m));
      chain.embeddings.push_back(std::move(emb));
      chain.stages.push_back(std::move(*step->materialized));
      continue;
    }
    chain.last = std::move(step->output);
    if (k + 1 < length) {
      chain.stopped_at = k + 1;
      chain.stop_reason = "stage " + std::to_string(k + 1) + " has " +
                          std::to_string(chain.last->size()) +
                          " elements, above max_module_size";
    }
    break;
  }
  chain.built_length = chain.stages.size() - 1 + (chain.last ? 1 : 0);

  // Composed embeddings M_0 -> M_k.
  ModuleMap composed(module.size());
  for (Element m = 0; m < composed.size(); ++m) composed[m] = m;
  for (std::size_t k = 0; k < chain.embeddings.size(); ++k) {
    for (auto& x : composed) x = chain.embeddings[k][x];
    chain.monotone = chain.monotone && is_injective(composed) &&
                     is_linear(module, chain.stages[k + 1], composed);
  }
  if (chain.last) {
    const PushoutModule& p = *chain.last;
    std::set<PushoutModule::Vec> seen;
    for (Element a = 0; a < module.size() && chain.monotone; ++a) {
      auto ea = p.embed(composed[a]);
      chain.monotone = seen.insert(ea).second;
      for (Element b = 0; b < module.size() && chain.monotone; ++b)
        chain.monotone = p.embed(composed[module.add(a, b)]) == p.add(ea, p.embed(composed[b]));
      for (Element r = 0; r < module.ring()->size() && chain.monotone; ++r)
        chain.monotone = p.embed(composed[module.scale(r, a)]) == p.scale(r, ea);
    }
  }
  return chain;
}

// --------------------------------------------------------------- envelopes

std::vector<ModuleMap> module_embeddings(const FiniteModule& a, const FiniteModule& b,
                                         std::size_t limit) {
  std::vector<ModuleMap> out;
  if (a.size() > b.size()) return out;
  for (auto& map : module_homs(a, b))
    if (is_injective(map)) {
      out.push_back(std::move(map));
      if (out.size() >= limit) break;
    }
  return out;
}

bool is_isomorphic(const FiniteModule& a, const FiniteModule& b) {
  return a.size() == b.size() && !module_embeddings(a, b, 1).empty();
}

EnvelopeResult injective_envelope_bruteforce(const FiniteModule& module, std::size_t bound,
                                             const Budget& budget) {
  if (bound > 256) throw DomainError("envelope search bound must be at most 256");
  const FiniteRingPtr& ring = module.ring();
  EnvelopeResult out;
  for (std::size_t m = 0;; ++m) {
    const std::uint64_t floor = std::uint64_t(1) << m;
    out.unsearched_lower_bound = floor;
    if (out.envelope && floor >= out.envelope->size()) break;
    if (floor > bound) break;
    std::uint64_t free_size = 1;
    for (std::size_t i = 0; i < m; ++i) free_size = saturating_mul(free_size, ring->size());
    if (free_size > std::min<std::size_t>(budget.max_module_size, 256)) break;

    FiniteModule free = m == 0 ? FiniteModule::zero(ring) : FiniteModule::free(ring, m, budget);
    auto subs = enumerate_submodules(free, budget);
    std::stable_sort(subs.begin(), subs.end(),
                     [](const ElementSet& a, const ElementSet& b) { return a.size() > b.size(); });
    for (const ElementSet& sub : subs) {
      const std::size_t q = free.size() / sub.size();
      if (q > bound || q < module.size()) continue;
      if (out.envelope && q >= out.envelope->size()) continue;
      FiniteModule e = free.quotient(sub);
      ++out.candidates;
      if (!baer_test(e, budget).injective) continue;
      auto emb = module_embeddings(module, e, 1);
      if (emb.empty()) continue;
      out.envelope = std::move(e);
      out.embedding = std::move(emb.front());
      break;
    }
    out.searched_rank = m;
    out.unsearched_lower_bound = floor << 1;
  }
  return out;
}

InjectiveResolution injective_resolution(const FiniteModule& module, std::size_t length,
                                         std::size_t bound, const Budget& budget) {
  InjectiveResolution out;
  FiniteModule current = module;
  ModuleMap into_current;  // previous term -> current cokernel
  for (std::size_t k = 0; k < length; ++k) {
    if (current.size() == 1 && k > 0) {
      out.terminated = true;
      break;
    }
    EnvelopeResult env = injective_envelope_bruteforce(current, bound, budget);
    if (!env.envelope) {
      out.missing_at = k;
      break;
    }
    ModuleMap map;
    if (k == 0) {
      map = env.embedding;
    } else {
      map.resize(into_current.size());
      for (Element x = 0; x < map.size(); ++x) map[x] = env.embedding[into_current[x]];
    }
    ElementSet image(env.embedding.begin(), env.embedding.end());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    ModuleMap projection;
    current = env.envelope->quotient(image, &projection);
    into_current = std::move(projection);
    out.maps.push_back(std::move(map));
    out.terms.push_back(std::move(*env.envelope));
  }
  if (!out.terminated && !out.missing_at && current.size() == 1 && !out.terms.empty())
    out.terminated = true;
  return out;
}

}  // namespace noether
