#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ktf/atom_mask.hpp"
#include "ktf/closure_model.hpp"
#include "ktf/word.hpp"

namespace ktf {

// Image of a single set under one generator. The generator must carry a
// concrete index (no star) within the model's topology count.
AtomMask apply(const ClosureModel& model, const Generator& g, const AtomMask& s);
std::uint64_t apply_bits(const ClosureModel& model, const Generator& g,
                         std::uint64_t s);

// Value of a word on one set, evaluated right to left. Stars are
// instantiated first. Works for models of any size.
AtomMask evaluate(const OpWord& w, const ClosureModel& model, const AtomMask& s);

// Full value table of an operator: entry s is the image of the subset whose
// bit pattern is s. Only for models with at most kMaxExhaustiveAtoms atoms.
class Transformation {
 public:
  Transformation() = default;
  Transformation(std::size_t atom_count, std::vector<std::uint32_t> table);

  static Transformation identity(std::size_t atom_count);
  static Transformation constant(std::size_t atom_count, std::uint32_t value);

  std::size_t atom_count() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::uint32_t operator[](std::size_t s) const noexcept { return table_[s]; }
  AtomMask at(const AtomMask& s) const;
  const std::vector<std::uint32_t>& table() const noexcept { return table_; }

  // Pointwise containment: this(s) is a subset of other(s) for every s.
  bool leq(const Transformation& other) const;
  // First subset (in numeric order) where the two differ.
  std::optional<std::uint32_t> first_difference(const Transformation& other) const;

  friend bool operator==(const Transformation&, const Transformation&) = default;
  friend std::strong_ordering operator<=>(const Transformation& a,
                                          const Transformation& b) {
    if (auto c = a.atoms_ <=> b.atoms_; c != 0) return c;
    return a.table_ <=> b.table_;
  }

  std::size_t hash() const noexcept;

 private:
  std::size_t atoms_ = 0;
  std::vector<std::uint32_t> table_;
};

struct TransformationHash {
  std::size_t operator()(const Transformation& t) const noexcept {
    return t.hash();
  }
};

// g composed after t.
Transformation post_compose(const Generator& g, const Transformation& t,
                            const ClosureModel& model);
Transformation compile(const OpWord& w, const ClosureModel& model);

struct OrbitResult {
  std::vector<Generator> generators;  // sorted k < i < f < c
  // Distinct sets in discovery order; witness[i] produces sets[i] from the
  // initial set and is the shortlex-least such word.
  std::vector<AtomMask> sets;
  std::vector<OpWord> witnesses;

  std::size_t size() const noexcept { return sets.size(); }
};

OrbitResult orbit(const ClosureModel& model, const AtomMask& initial,
                  std::vector<Generator> gens);

// Orbit size only, on the word-sized kernel (atom_count() <= 64).
std::size_t orbit_size(const ClosureModel& model, std::uint64_t initial,
                       std::span<const Generator> gens);

struct OperatorPartition {
  // Word indices grouped by equal transformation; classes ordered by their
  // first member, members ascending.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  std::vector<Transformation> tables;  // one per word

  std::optional<AtomMask> separating_subset(std::size_t a, std::size_t b) const;
};

OperatorPartition distinct_operators(const ClosureModel& model,
                                     std::span<const OpWord> words);

struct PosetResult {
  std::vector<OpWord> elements;
  // leq[a][b]: elements[a] <= elements[b] on every subset of every model
  // in the evaluation family.
  std::vector<std::vector<bool>> leq;
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> representatives;  // first element of each class
  // Transitive reduction over representatives, as (lower, upper) element
  // indices.
  std::vector<std::pair<std::size_t, std::size_t>> hasse;
};

PosetResult partial_order(std::span<const ClosureModel> family,
                          std::span<const OpWord> words);
PosetResult partial_order(const ClosureModel& model,
                          std::span<const OpWord> words);

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix transitive_closure(std::size_t size,
                              std::span<const std::pair<std::size_t, std::size_t>> edges);
// Edges (a, b) with a < b strictly and nothing strictly between. The
// relation must be a partial order.
std::vector<std::pair<std::size_t, std::size_t>> transitive_reduction(
    const BoolMatrix& order);
bool is_reflexive(const BoolMatrix& r);
bool is_transitive(const BoolMatrix& r);
bool is_antisymmetric(const BoolMatrix& r);

// Graphviz rendering of the Hasse diagram, nodes in shortlex order.
std::string hasse_dot(const PosetResult& poset);

struct SeparationWitness {
  std::uint32_t staircase = 0;  // m: topologies 1..m Sorgenfrey-like
  AtomMask subset;

  friend bool operator==(const SeparationWitness&,
                         const SeparationWitness&) = default;
};

// Pairwise separation of canonical words on the staircase models for n,
// scanning m = 0..n and then subsets in increasing numeric order. Compiled
// tables are cached per (m, word).
class Separator {
 public:
  explicit Separator(std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }
  const ClosureModel& staircase(std::uint32_t m) const { return models_.at(m); }

  // Throws UsageError unless both words are canonical for n and distinct.
  std::optional<SeparationWitness> separate(const OpWord& a, const OpWord& b);

  // Compiles and caches the words on all staircases. After this,
  // separate_cached() on these words is safe to call concurrently.
  void prepare(std::span<const OpWord> words);
  std::optional<SeparationWitness> separate_cached(const OpWord& a,
                                                   const OpWord& b) const;

 private:
  void check(const OpWord& a, const OpWord& b) const;
  const Transformation& table(std::uint32_t m, const OpWord& w);

  std::uint32_t n_;
  std::vector<ClosureModel> models_;
  std::vector<std::unordered_map<OpWord, Transformation, OpWordHash>> cache_;
};

std::optional<SeparationWitness> separate_pair(const OpWord& a, const OpWord& b,
                                               std::uint32_t n);

struct PairSeparation {
  std::size_t a = 0;
  std::size_t b = 0;
  std::optional<SeparationWitness> witness;
};

// All pairs a < b, in lexicographic pair order. Runs on up to `threads`
// workers; the result does not depend on the thread count.
std::vector<PairSeparation> separate_all(std::span<const OpWord> words,
                                         std::uint32_t n, unsigned threads);

struct MonoidResult {
  std::vector<Transformation> elements;  // discovery order, identity first
  std::vector<OpWord> witnesses;         // shortlex-least words
};

inline constexpr std::size_t kDefaultMonoidCap = 100000;

// Closes {identity} under post-composition with the generators. Throws
// SizeGuardExceeded once more than `cap` elements are found.
MonoidResult monoid_closure(const ClosureModel& model,
                            std::vector<Generator> gens,
                            std::size_t cap = kDefaultMonoidCap);

// Generator lists such as "k1,k2,c" or "k1 f1 c".
std::vector<Generator> parse_generators(std::string_view text);
std::string to_string(std::span<const Generator> gens);

// Worker count from KTF_THREADS (if set and positive), else the hardware
// concurrency, at least 1.
unsigned default_threads();

}  // namespace ktf
