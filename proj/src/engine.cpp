#include "ktf/engine.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <thread>
#include <unordered_set>

#include "ktf/catalog.hpp"
#include "ktf/error.hpp"
#include "ktf/kge.hpp"
#include "ktf/rewrite.hpp"

namespace ktf {

namespace {

void check_generator(const ClosureModel& model, const Generator& g) {
  if (g.kind == Kind::C) return;
  if (g.is_star()) {
    throw UsageError("generator " + to_string(g) + " has no concrete index");
  }
  model.check_topology(g.index);
}

void check_word(const ClosureModel& model, const OpWord& w) {
  if (w.max_index() > model.topology_count()) {
    throw UsageError("word " + to_string(w) + " uses an index above n = " +
                     std::to_string(model.topology_count()));
  }
}

void check_table_size(const ClosureModel& model) {
  if (model.atom_count() > kMaxExhaustiveAtoms) {
    throw UsageError("transformation tables need at most " +
                     std::to_string(kMaxExhaustiveAtoms) + " atoms, model has " +
                     std::to_string(model.atom_count()));
  }
}

std::vector<Generator> sorted_generators(std::vector<Generator> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

std::string word_label(const std::vector<OpWord>& elements,
                       const std::vector<std::size_t>& class_of,
                       std::size_t rep) {
  std::string label;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (class_of[i] != class_of[rep]) continue;
    if (!label.empty()) label += " = ";
    label += to_string(elements[i]);
  }
  return label;
}

}  // namespace

std::uint64_t apply_bits(const ClosureModel& model, const Generator& g,
                         std::uint64_t s) {
  switch (g.kind) {
    case Kind::K: return model.closure_bits(g.index, s);
    case Kind::I: return model.interior_bits(g.index, s);
    case Kind::F: return model.frontier_bits(g.index, s);
    case Kind::C: return model.full_bits() & ~s;
  }
  return s;
}

AtomMask apply(const ClosureModel& model, const Generator& g,
               const AtomMask& s) {
  check_generator(model, g);
  model.check_mask(s);
  if (model.fits_word()) {
    return AtomMask::from_bits(model.atom_count(),
                               apply_bits(model, g, s.to_u64()));
  }
  switch (g.kind) {
    case Kind::K: return closure(model, g.index, s);
    case Kind::I: return interior(model, g.index, s);
    case Kind::F: return frontier(model, g.index, s);
    case Kind::C: return s.complement();
  }
  return s;
}

AtomMask evaluate(const OpWord& w, const ClosureModel& model,
                  const AtomMask& s) {
  model.check_mask(s);
  if (w.is_zero()) return model.empty_mask();
  if (w.is_one()) return model.full_mask();
  check_word(model, w);
  const OpWord inst = instantiate_stars(w);
  AtomMask cur = s;
  const auto& g = inst.gens();
  for (auto it = g.rbegin(); it != g.rend(); ++it) cur = apply(model, *it, cur);
  return cur;
}

Transformation::Transformation(std::size_t atom_count,
                               std::vector<std::uint32_t> table)
    : atoms_(atom_count), table_(std::move(table)) {
  if (atom_count > kMaxExhaustiveAtoms) {
    throw UsageError("transformation over too many atoms");
  }
  if (table_.size() != (std::size_t{1} << atom_count)) {
    throw UsageError("transformation table has the wrong length");
  }
}

Transformation Transformation::identity(std::size_t atom_count) {
  std::vector<std::uint32_t> t(std::size_t{1} << atom_count);
  for (std::size_t s = 0; s < t.size(); ++s) t[s] = static_cast<std::uint32_t>(s);
  return Transformation(atom_count, std::move(t));
}

Transformation Transformation::constant(std::size_t atom_count,
                                        std::uint32_t value) {
  return Transformation(
      atom_count, std::vector<std::uint32_t>(std::size_t{1} << atom_count, value));
}

AtomMask Transformation::at(const AtomMask& s) const {
  if (s.width() != atoms_) throw UsageError("mask width mismatch");
  return AtomMask::from_bits(atoms_, table_[static_cast<std::size_t>(s.to_u64())]);
}

bool Transformation::leq(const Transformation& other) const {
  if (other.atoms_ != atoms_) throw UsageError("transformation size mismatch");
  for (std::size_t s = 0; s < table_.size(); ++s) {
    if ((table_[s] & ~other.table_[s]) != 0) return false;
  }
  return true;
}

std::optional<std::uint32_t> Transformation::first_difference(
    const Transformation& other) const {
  if (other.atoms_ != atoms_) throw UsageError("transformation size mismatch");
  const auto it = std::mismatch(table_.begin(), table_.end(), other.table_.begin());
  if (it.first == table_.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it.first - table_.begin());
}

std::size_t Transformation::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ atoms_;
  for (auto v : table_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Transformation post_compose(const Generator& g, const Transformation& t,
                            const ClosureModel& model) {
  check_generator(model, g);
  if (t.atom_count() != model.atom_count()) {
    throw UsageError("transformation does not belong to this model");
  }
  std::vector<std::uint32_t> out(t.size());
  for (std::size_t s = 0; s < t.size(); ++s) {
    out[s] = static_cast<std::uint32_t>(apply_bits(model, g, t[s]));
  }
  return Transformation(t.atom_count(), std::move(out));
}

Transformation compile(const OpWord& w, const ClosureModel& model) {
  check_table_size(model);
  const std::size_t atoms = model.atom_count();
  if (w.is_zero()) return Transformation::constant(atoms, 0);
  if (w.is_one()) {
    return Transformation::constant(atoms,
                                    static_cast<std::uint32_t>(model.full_bits()));
  }
  check_word(model, w);
  const OpWord inst = instantiate_stars(w);
  Transformation t = Transformation::identity(atoms);
  const auto& g = inst.gens();
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    t = post_compose(*it, t, model);
  }
  return t;
}

OrbitResult orbit(const ClosureModel& model, const AtomMask& initial,
                  std::vector<Generator> gens) {
  model.check_mask(initial);
  OrbitResult r;
  r.generators = sorted_generators(std::move(gens));
  for (const auto& g : r.generators) check_generator(model, g);
  std::unordered_map<AtomMask, std::size_t, AtomMaskHash> index;
  r.sets.push_back(initial);
  r.witnesses.push_back(OpWord::identity());
  index.emplace(initial, 0);
  std::size_t level_begin = 0;
  while (level_begin < r.sets.size()) {
    const std::size_t level_end = r.sets.size();
    for (const auto& g : r.generators) {
      for (std::size_t p = level_begin; p < level_end; ++p) {
        AtomMask next = apply(model, g, r.sets[p]);
        if (index.count(next) != 0) continue;
        index.emplace(next, r.sets.size());
        r.sets.push_back(std::move(next));
        r.witnesses.push_back(prepend(g, r.witnesses[p]));
      }
    }
    level_begin = level_end;
  }
  return r;
}

std::size_t orbit_size(const ClosureModel& model, std::uint64_t initial,
                       std::span<const Generator> gens) {
  if (!model.fits_word()) throw UsageError("orbit_size needs at most 64 atoms");
  for (const auto& g : gens) check_generator(model, g);
  std::vector<std::uint64_t> sets{initial};
  std::unordered_set<std::uint64_t> seen{initial};
  for (std::size_t p = 0; p < sets.size(); ++p) {
    for (const auto& g : gens) {
      const std::uint64_t next = apply_bits(model, g, sets[p]);
      if (seen.insert(next).second) sets.push_back(next);
    }
  }
  return sets.size();
}

std::optional<AtomMask> OperatorPartition::separating_subset(std::size_t a,
                                                             std::size_t b) const {
  const auto d = tables.at(a).first_difference(tables.at(b));
  if (!d) return std::nullopt;
  return AtomMask::from_bits(tables[a].atom_count(), *d);
}

OperatorPartition distinct_operators(const ClosureModel& model,
                                     std::span<const OpWord> words) {
  OperatorPartition p;
  std::unordered_map<Transformation, std::size_t, TransformationHash> cls;
  for (std::size_t i = 0; i < words.size(); ++i) {
    p.tables.push_back(compile(words[i], model));
    auto [it, fresh] = cls.emplace(p.tables.back(), p.classes.size());
    if (fresh) p.classes.emplace_back();
    p.classes[it->second].push_back(i);
    p.class_of.push_back(it->second);
  }
  return p;
}

PosetResult partial_order(std::span<const ClosureModel> family,
                          std::span<const OpWord> words) {
  if (family.empty()) throw UsageError("empty evaluation family");
  const std::size_t size = words.size();
  std::vector<std::vector<Transformation>> tables(family.size());
  for (std::size_t m = 0; m < family.size(); ++m) {
    for (const auto& w : words) tables[m].push_back(compile(w, family[m]));
  }
  PosetResult r;
  r.elements.assign(words.begin(), words.end());
  r.leq.assign(size, std::vector<bool>(size, false));
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      bool le = true;
      for (std::size_t m = 0; m < family.size() && le; ++m) {
        le = tables[m][a].leq(tables[m][b]);
      }
      r.leq[a][b] = le;
    }
  }
  r.class_of.assign(size, 0);
  for (std::size_t a = 0; a < size; ++a) {
    std::size_t c = r.representatives.size();
    for (std::size_t k = 0; k < r.representatives.size(); ++k) {
      const std::size_t rep = r.representatives[k];
      if (r.leq[a][rep] && r.leq[rep][a]) {
        c = k;
        break;
      }
    }
    if (c == r.representatives.size()) r.representatives.push_back(a);
    r.class_of[a] = c;
  }
  const std::size_t reps = r.representatives.size();
  BoolMatrix order(reps, std::vector<bool>(reps, false));
  for (std::size_t i = 0; i < reps; ++i) {
    for (std::size_t j = 0; j < reps; ++j) {
      order[i][j] = r.leq[r.representatives[i]][r.representatives[j]];
    }
  }
  for (const auto& [lo, hi] : transitive_reduction(order)) {
    r.hasse.emplace_back(r.representatives[lo], r.representatives[hi]);
  }
  return r;
}

PosetResult partial_order(const ClosureModel& model,
                          std::span<const OpWord> words) {
  return partial_order(std::span<const ClosureModel>(&model, 1), words);
}

BoolMatrix transitive_closure(
    std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  BoolMatrix r(size, std::vector<bool>(size, false));
  for (std::size_t i = 0; i < size; ++i) r[i][i] = true;
  for (const auto& [a, b] : edges) {
    if (a >= size || b >= size) throw UsageError("edge endpoint out of range");
    r[a][b] = true;
  }
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < size; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> transitive_reduction(
    const BoolMatrix& order) {
  const std::size_t size = order.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      if (a == b || !order[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < size && covered; ++c) {
        if (c != a && c != b && order[a][c] && order[c][b]) covered = false;
      }
      if (covered) out.emplace_back(a, b);
    }
  }
  return out;
}

bool is_reflexive(const BoolMatrix& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i][i]) return false;
  }
  return true;
}

bool is_transitive(const BoolMatrix& r) {
  const std::size_t size = r.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (!r[i][j]) continue;
      for (std::size_t k = 0; k < size; ++k) {
        if (r[j][k] && !r[i][k]) return false;
      }
    }
  }
  return true;
}

bool is_antisymmetric(const BoolMatrix& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      if (r[i][j] && r[j][i]) return false;
    }
  }
  return true;
}

std::string hasse_dot(const PosetResult& poset) {
  std::vector<std::size_t> reps = poset.representatives;
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    return shortlex_less(poset.elements[a], poset.elements[b]);
  });
  std::map<std::size_t, std::size_t> rank;
  for (std::size_t i = 0; i < reps.size(); ++i) rank[reps[i]] = i;

  std::string out = "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" +
           word_label(poset.elements, poset.class_of, reps[i]) + "\"];\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [lo, hi] : poset.hasse) edges.emplace_back(rank[lo], rank[hi]);
  std::sort(edges.begin(), edges.end());
  for (const auto& [lo, hi] : edges) {
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  }
  return out + "}\n";
}

Separator::Separator(std::uint32_t n) : n_(n), cache_(n + 1) {
  if (n < 1) throw UsageError("n must be at least 1");
  for (std::uint32_t m = 0; m <= n; ++m) models_.push_back(ktf::staircase(n, m));
}

void Separator::check(const OpWord& a, const OpWord& b) const {
  for (const auto* w : {&a, &b}) {
    if (w->max_index() > n_ || !is_canonical(*w, n_)) {
      throw UsageError("'" + to_string(*w) + "' is not a canonical word for n = " +
                       std::to_string(n_));
    }
  }
  if (a == b) throw UsageError("cannot separate a word from itself");
}

const Transformation& Separator::table(std::uint32_t m, const OpWord& w) {
  auto& c = cache_[m];
  auto it = c.find(w);
  if (it == c.end()) it = c.emplace(w, compile(w, models_[m])).first;
  return it->second;
}

std::optional<SeparationWitness> Separator::separate(const OpWord& a,
                                                     const OpWord& b) {
  check(a, b);
  for (std::uint32_t m = 0; m <= n_; ++m) {
    if (auto d = table(m, a).first_difference(table(m, b))) {
      return SeparationWitness{m, AtomMask::from_bits(models_[m].atom_count(), *d)};
    }
  }
  return std::nullopt;
}

void Separator::prepare(std::span<const OpWord> words) {
  for (std::uint32_t m = 0; m <= n_; ++m) {
    for (const auto& w : words) table(m, w);
  }
}

std::optional<SeparationWitness> Separator::separate_cached(
    const OpWord& a, const OpWord& b) const {
  check(a, b);
  for (std::uint32_t m = 0; m <= n_; ++m) {
    const auto& c = cache_[m];
    const auto ia = c.find(a);
    const auto ib = c.find(b);
    if (ia == c.end() || ib == c.end()) {
      throw UsageError("separate_cached on a word that was not prepared");
    }
    if (auto d = ia->second.first_difference(ib->second)) {
      return SeparationWitness{m, AtomMask::from_bits(models_[m].atom_count(), *d)};
    }
  }
  return std::nullopt;
}

std::optional<SeparationWitness> separate_pair(const OpWord& a, const OpWord& b,
                                               std::uint32_t n) {
  Separator s(n);
  return s.separate(a, b);
}

std::vector<PairSeparation> separate_all(std::span<const OpWord> words,
                                         std::uint32_t n, unsigned threads) {
  Separator sep(n);
  sep.prepare(words);
  std::vector<PairSeparation> out;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) out.push_back({a, b, {}});
  }
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::max<std::size_t>(out.size(), 1))));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < out.size(); i += threads) {
      out[i].witness = sep.separate_cached(words[out[i].a], words[out[i].b]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

MonoidResult monoid_closure(const ClosureModel& model,
                            std::vector<Generator> gens, std::size_t cap) {
  check_table_size(model);
  gens = sorted_generators(std::move(gens));
  for (const auto& g : gens) check_generator(model, g);
  MonoidResult r;
  std::unordered_map<Transformation, std::size_t, TransformationHash> index;
  r.elements.push_back(Transformation::identity(model.atom_count()));
  r.witnesses.push_back(OpWord::identity());
  index.emplace(r.elements.front(), 0);
  std::size_t level_begin = 0;
  while (level_begin < r.elements.size()) {
    const std::size_t level_end = r.elements.size();
    for (const auto& g : gens) {
      for (std::size_t p = level_begin; p < level_end; ++p) {
        Transformation next = post_compose(g, r.elements[p], model);
        if (index.count(next) != 0) continue;
        if (r.elements.size() >= cap) {
          throw SizeGuardExceeded("monoid has more than " + std::to_string(cap) +
                                  " elements");
        }
        index.emplace(next, r.elements.size());
        r.elements.push_back(std::move(next));
        r.witnesses.push_back(prepend(g, r.witnesses[p]));
      }
    }
    level_begin = level_end;
  }
  return r;
}

std::vector<Generator> parse_generators(std::string_view text) {
  std::vector<Generator> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (item.empty()) throw UsageError("empty entry in generator list '" + std::string(text) + "'");
    const OpWord w = parse_word(item);
    if (w.is_constant() || w.gens().size() != 1 || w.gens()[0].is_star()) {
      throw UsageError("'" + std::string(item) + "' is not a single concrete generator");
    }
    out.push_back(w.gens()[0]);
    start = end + 1;
  }
  return out;
}

std::string to_string(std::span<const Generator> gens) {
  std::string out;
  for (const auto& g : gens) {
    if (!out.empty()) out += ',';
    out += to_string(g);
  }
  return out;
}

unsigned default_threads() {
  if (const char* env = std::getenv("KTF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace ktf
