#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ktf/atom_mask.hpp"

namespace ktf {

// Exhaustive 2^atoms scans (validation, transformation tables) are only
// attempted up to this many atoms.
inline constexpr std::size_t kMaxExhaustiveAtoms = 24;

enum class ModelKind { PointSpace, BlockQuotient };

// A finite n-topological closure algebra. For each topology index j in
// 1..n and each atom a, row(j, a) is the closure of {a} under tau_j;
// closures of larger sets are unions of rows.
//
// Construction checks only structure (shapes and widths). The closure
// axioms, nesting and saturation are reported by validate().
class ClosureModel {
 public:
  ClosureModel(std::vector<std::string> atoms,
               std::vector<std::vector<AtomMask>> rows,
               ModelKind kind = ModelKind::PointSpace);

  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t topology_count() const noexcept { return rows_.size(); }
  ModelKind kind() const noexcept { return kind_; }

  const std::vector<std::string>& atom_names() const noexcept { return atoms_; }
  std::optional<std::size_t> find_atom(std::string_view name) const;

  // j is 1-based.
  const AtomMask& row(std::size_t j, std::size_t atom) const;

  AtomMask empty_mask() const { return AtomMask(atom_count()); }
  AtomMask full_mask() const { return AtomMask::full(atom_count()); }

  // Word-sized kernel, available when atom_count() <= 64. Topology index j
  // is 1-based and is not range checked here.
  bool fits_word() const noexcept { return atom_count() <= 64; }
  std::uint64_t full_bits() const noexcept { return full_bits_; }
  std::uint64_t closure_bits(std::size_t j, std::uint64_t s) const noexcept {
    const auto& k = *kernel_;
    if (!k.table.empty()) return k.table[j - 1][s];
    std::uint64_t out = 0;
    const auto& rows = k.rows[j - 1];
    while (s != 0) {
      out |= rows[static_cast<std::size_t>(std::countr_zero(s))];
      s &= s - 1;
    }
    return out;
  }
  std::uint64_t interior_bits(std::size_t j, std::uint64_t s) const noexcept {
    return full_bits_ & ~closure_bits(j, full_bits_ & ~s);
  }
  std::uint64_t frontier_bits(std::size_t j, std::uint64_t s) const noexcept {
    return closure_bits(j, s) & closure_bits(j, full_bits_ & ~s);
  }

  void check_topology(std::size_t j) const;
  void check_mask(const AtomMask& s) const;

 private:
  struct Kernel {
    std::vector<std::vector<std::uint64_t>> rows;
    // Full closure lookup per topology for models of at most 16 atoms.
    std::vector<std::vector<std::uint64_t>> table;
  };

  std::vector<std::string> atoms_;
  std::vector<std::vector<AtomMask>> rows_;
  ModelKind kind_;
  std::uint64_t full_bits_ = 0;
  std::shared_ptr<const Kernel> kernel_;
};

AtomMask closure(const ClosureModel& model, std::size_t j, const AtomMask& s);
AtomMask interior(const ClosureModel& model, std::size_t j, const AtomMask& s);
AtomMask frontier(const ClosureModel& model, std::size_t j, const AtomMask& s);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string counterexample;  // empty when passed
};

struct ValidationReport {
  CheckResult extensive{"extensive", true, {}};
  CheckResult idempotent{"idempotent", true, {}};
  CheckResult nested{"nested", true, {}};
  // Definition level: every nonempty tau_x-open set has nonempty
  // tau_y-interior.
  CheckResult saturated{"saturated", true, {}};
  // Identity level: k_x i_y == k_x i_x and i_x k_y == i_x k_x.
  CheckResult saturation_identity{"saturation_identity", true, {}};
  // False when the model was too large for 2^atoms scans and the checks
  // fell back to minimal open sets (definition) and sampling (identity).
  bool exhaustive = true;

  bool saturation_checks_agree() const {
    return saturated.passed == saturation_identity.passed;
  }
  bool ok() const {
    return extensive.passed && idempotent.passed && nested.passed &&
           saturated.passed;
  }
  std::vector<const CheckResult*> checks() const {
    return {&extensive, &idempotent, &nested, &saturated,
            &saturation_identity};
  }
};

ValidationReport validate(const ClosureModel& model);

struct DisjointUnion {
  ClosureModel model;
  AtomMask set;
  std::vector<std::size_t> offsets;  // first atom of each component
};

// n-topological disjoint union; atom names are prefixed "c<i>." per
// component. sets[i] must belong to models[i].
DisjointUnion disjoint_union(std::span<const ClosureModel> models,
                             std::span<const AtomMask> sets);

}  // namespace ktf
