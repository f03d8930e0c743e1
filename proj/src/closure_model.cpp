#include "ktf/closure_model.hpp"

#include <bit>
#include <random>
#include <unordered_set>

#include "ktf/error.hpp"

namespace ktf {

namespace {

constexpr std::size_t kLookupTableAtoms = 16;
constexpr std::size_t kIdentitySamples = 1 << 14;

std::string atom_label(const ClosureModel& m, std::size_t a) {
  return m.atom_names()[a];
}

std::string mask_label(const ClosureModel& m, const AtomMask& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t a) {
    if (!first) out += ",";
    out += m.atom_names()[a];
    first = false;
  });
  return out + "}";
}

}  // namespace

ClosureModel::ClosureModel(std::vector<std::string> atoms,
                           std::vector<std::vector<AtomMask>> rows,
                           ModelKind kind)
    : atoms_(std::move(atoms)), rows_(std::move(rows)), kind_(kind) {
  if (atoms_.empty()) throw UsageError("model needs at least one atom");
  if (rows_.empty()) throw UsageError("model needs at least one topology");
  std::unordered_set<std::string> seen;
  for (const auto& name : atoms_) {
    if (name.empty()) throw UsageError("empty atom name");
    if (!seen.insert(name).second) {
      throw UsageError("duplicate atom name '" + name + "'");
    }
  }
  const std::size_t width = atoms_.size();
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    if (rows_[t].size() != width) {
      throw UsageError("topology " + std::to_string(t + 1) + " has " +
                       std::to_string(rows_[t].size()) + " rows, expected " +
                       std::to_string(width));
    }
    for (const auto& r : rows_[t]) {
      if (r.width() != width) throw UsageError("row width mismatch");
    }
  }

  auto kernel = std::make_shared<Kernel>();
  if (width <= 64) {
    full_bits_ = width == 64 ? ~std::uint64_t{0}
                             : (std::uint64_t{1} << width) - 1;
    kernel->rows.resize(rows_.size());
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      for (const auto& r : rows_[t]) kernel->rows[t].push_back(r.to_u64());
    }
    if (width <= kLookupTableAtoms) {
      const std::size_t size = std::size_t{1} << width;
      kernel->table.resize(rows_.size());
      for (std::size_t t = 0; t < rows_.size(); ++t) {
        auto& tab = kernel->table[t];
        tab.assign(size, 0);
        for (std::size_t s = 1; s < size; ++s) {
          const std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
          tab[s] = tab[s & (s - 1)] | kernel->rows[t][low];
        }
      }
    }
  }
  kernel_ = std::move(kernel);
}

std::optional<std::size_t> ClosureModel::find_atom(std::string_view name) const {
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    if (atoms_[a] == name) return a;
  }
  return std::nullopt;
}

const AtomMask& ClosureModel::row(std::size_t j, std::size_t atom) const {
  check_topology(j);
  if (atom >= atom_count()) throw UsageError("atom index out of range");
  return rows_[j - 1][atom];
}

void ClosureModel::check_topology(std::size_t j) const {
  if (j < 1 || j > topology_count()) {
    throw UsageError("topology index " + std::to_string(j) +
                     " out of range 1.." + std::to_string(topology_count()));
  }
}

void ClosureModel::check_mask(const AtomMask& s) const {
  if (s.width() != atom_count()) {
    throw UsageError("mask width " + std::to_string(s.width()) +
                     " does not match model atom count " +
                     std::to_string(atom_count()));
  }
}

AtomMask closure(const ClosureModel& model, std::size_t j, const AtomMask& s) {
  model.check_topology(j);
  model.check_mask(s);
  if (model.fits_word()) {
    return AtomMask::from_bits(model.atom_count(),
                               model.closure_bits(j, s.to_u64()));
  }
  AtomMask out(model.atom_count());
  s.for_each([&](std::size_t a) { out |= model.row(j, a); });
  return out;
}

AtomMask interior(const ClosureModel& model, std::size_t j, const AtomMask& s) {
  return closure(model, j, s.complement()).complement();
}

AtomMask frontier(const ClosureModel& model, std::size_t j, const AtomMask& s) {
  return closure(model, j, s) & closure(model, j, s.complement());
}

ValidationReport validate(const ClosureModel& model) {
  ValidationReport report;
  const std::size_t n = model.topology_count();
  const std::size_t atoms = model.atom_count();

  for (std::size_t j = 1; j <= n && report.extensive.passed; ++j) {
    for (std::size_t a = 0; a < atoms; ++a) {
      if (!model.row(j, a).test(a)) {
        report.extensive.passed = false;
        report.extensive.counterexample =
            "atom " + atom_label(model, a) + " not in its own tau_" +
            std::to_string(j) + " closure";
        break;
      }
    }
  }

  for (std::size_t j = 1; j <= n && report.idempotent.passed; ++j) {
    for (std::size_t a = 0; a < atoms; ++a) {
      const AtomMask& r = model.row(j, a);
      if (closure(model, j, r) != r) {
        report.idempotent.passed = false;
        report.idempotent.counterexample =
            "tau_" + std::to_string(j) + " closure row of " +
            atom_label(model, a) + " = " + mask_label(model, r) +
            " is not closed";
        break;
      }
    }
  }

  for (std::size_t j = 1; j < n && report.nested.passed; ++j) {
    for (std::size_t a = 0; a < atoms; ++a) {
      if (!model.row(j, a).subset_of(model.row(j + 1, a))) {
        report.nested.passed = false;
        report.nested.counterexample =
            "tau_" + std::to_string(j) + " closure of " + atom_label(model, a) +
            " is not contained in its tau_" + std::to_string(j + 1) +
            " closure";
        break;
      }
    }
  }

  report.exhaustive = atoms <= kMaxExhaustiveAtoms;

  if (report.exhaustive) {
    const std::uint64_t size = std::uint64_t{1} << atoms;
    for (std::size_t x = 1; x <= n && report.saturated.passed; ++x) {
      for (std::uint64_t s = 1; s < size; ++s) {
        if (model.interior_bits(x, s) != s) continue;
        for (std::size_t y = 1; y <= n; ++y) {
          if (model.interior_bits(y, s) == 0) {
            report.saturated.passed = false;
            report.saturated.counterexample =
                "tau_" + std::to_string(x) + "-open set " +
                mask_label(model, AtomMask::from_bits(atoms, s)) +
                " has empty tau_" + std::to_string(y) + "-interior";
            break;
          }
        }
        if (!report.saturated.passed) break;
      }
    }
  } else {
    // Every nonempty tau_x-open set contains the smallest tau_x-open
    // neighbourhood of one of its atoms, and interiors are monotone.
    for (std::size_t x = 1; x <= n && report.saturated.passed; ++x) {
      for (std::size_t a = 0; a < atoms && report.saturated.passed; ++a) {
        AtomMask nbhd(atoms);
        for (std::size_t b = 0; b < atoms; ++b) {
          if (model.row(x, b).test(a)) nbhd.set(b);
        }
        for (std::size_t y = 1; y <= n; ++y) {
          if (interior(model, y, nbhd).none()) {
            report.saturated.passed = false;
            report.saturated.counterexample =
                "smallest tau_" + std::to_string(x) + "-open set around " +
                atom_label(model, a) + " has empty tau_" + std::to_string(y) +
                "-interior";
            break;
          }
        }
      }
    }
  }

  auto identity_fails = [&](std::size_t x, std::size_t y,
                            const AtomMask& s) -> std::string {
    if (closure(model, x, interior(model, y, s)) !=
        closure(model, x, interior(model, x, s))) {
      return "k" + std::to_string(x) + " i" + std::to_string(y) + " != k" +
             std::to_string(x) + " i" + std::to_string(x) + " on " +
             mask_label(model, s);
    }
    if (interior(model, x, closure(model, y, s)) !=
        interior(model, x, closure(model, x, s))) {
      return "i" + std::to_string(x) + " k" + std::to_string(y) + " != i" +
             std::to_string(x) + " k" + std::to_string(x) + " on " +
             mask_label(model, s);
    }
    return {};
  };

  if (report.exhaustive) {
    const std::uint64_t size = std::uint64_t{1} << atoms;
    for (std::size_t x = 1; x <= n && report.saturation_identity.passed; ++x) {
      for (std::size_t y = 1; y <= n && report.saturation_identity.passed;
           ++y) {
        if (x == y) continue;
        for (std::uint64_t s = 0; s < size; ++s) {
          const std::uint64_t kiy =
              model.closure_bits(x, model.interior_bits(y, s));
          const std::uint64_t kix =
              model.closure_bits(x, model.interior_bits(x, s));
          const std::uint64_t iky =
              model.interior_bits(x, model.closure_bits(y, s));
          const std::uint64_t ikx =
              model.interior_bits(x, model.closure_bits(x, s));
          if (kiy != kix || iky != ikx) {
            report.saturation_identity.passed = false;
            report.saturation_identity.counterexample =
                identity_fails(x, y, AtomMask::from_bits(atoms, s));
            break;
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(0x6b7466);
    for (std::size_t i = 0; i < kIdentitySamples; ++i) {
      AtomMask s(atoms);
      for (std::size_t a = 0; a < atoms; ++a) {
        if (rng() & 1u) s.set(a);
      }
      for (std::size_t x = 1; x <= n; ++x) {
        for (std::size_t y = 1; y <= n; ++y) {
          if (x == y) continue;
          if (auto msg = identity_fails(x, y, s); !msg.empty()) {
            report.saturation_identity.passed = false;
            report.saturation_identity.counterexample = std::move(msg);
            return report;
          }
        }
      }
    }
  }
  return report;
}

DisjointUnion disjoint_union(std::span<const ClosureModel> models,
                             std::span<const AtomMask> sets) {
  if (models.empty()) throw UsageError("disjoint union of no models");
  if (models.size() != sets.size()) {
    throw UsageError("disjoint union needs one set per model");
  }
  const std::size_t n = models.front().topology_count();
  std::size_t total = 0;
  std::vector<std::size_t> offsets;
  bool all_points = true;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (models[i].topology_count() != n) {
      throw UsageError("disjoint union of models with different n");
    }
    models[i].check_mask(sets[i]);
    offsets.push_back(total);
    total += models[i].atom_count();
    all_points = all_points && models[i].kind() == ModelKind::PointSpace;
  }

  std::vector<std::string> names;
  names.reserve(total);
  std::vector<std::vector<AtomMask>> rows(n);
  AtomMask set(total);
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    for (const auto& name : m.atom_names()) {
      names.push_back("c" + std::to_string(i) + "." + name);
    }
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t a = 0; a < m.atom_count(); ++a) {
        AtomMask r(total);
        m.row(j, a).embed_into(r, offsets[i]);
        rows[j - 1].push_back(std::move(r));
      }
    }
    sets[i].embed_into(set, offsets[i]);
  }
  return DisjointUnion{
      ClosureModel(std::move(names), std::move(rows),
                   all_points ? ModelKind::PointSpace
                              : ModelKind::BlockQuotient),
      std::move(set), std::move(offsets)};
}

}  // namespace ktf
