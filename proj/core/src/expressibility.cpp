#include "datavec/expressibility.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "datavec/errors.hpp"
#include "datavec/histogram.hpp"
#include "datavec/hnf.hpp"
#include "datavec/interner.hpp"

namespace datavec {

ExpressibilityInstance ExpressibilityInstance::make(std::size_t dim,
                                                    std::vector<DataVector> members,
                                                    DataVector target) {
  if (dim == 0) throw std::invalid_argument("instance: dimension must be positive");
  if (target.dim() != dim) throw std::invalid_argument("instance: target dimension mismatch");
  for (const auto& v : members) {
    if (v.dim() != dim) throw std::invalid_argument("instance: member dimension mismatch");
  }
  return ExpressibilityInstance(dim, std::move(members), std::move(target));
}

std::size_t support_bound(const ExpressibilityInstance& inst) {
  std::size_t bound = inst.target().support().size() + 1;
  for (const auto& v : inst.members()) {
    std::size_t s = v.support().size();
    if (s > 0) bound += 2 * s - 1;
  }
  return bound;
}

IlpBuild build_ilp(const ExpressibilityInstance& inst, std::size_t fresh_columns) {
  const std::size_t d = inst.dim();
  const DataVector& x = inst.target();
  std::set<DataValue> supp_x = x.support();

  std::size_t max_fresh = support_bound(inst) - supp_x.size();
  std::size_t k = std::min(fresh_columns, max_fresh);

  std::set<DataValue> used = supp_x;
  for (const auto& v : inst.members()) {
    for (DataValue a : v.support()) used.insert(a);
  }
  std::vector<DataValue> fresh = fresh_values(used, k);

  IlpBuild build;
  std::set<DataValue> col_set = supp_x;
  col_set.insert(fresh.begin(), fresh.end());
  build.columns.assign(col_set.begin(), col_set.end());

  std::vector<std::size_t> actives;
  for (std::size_t j = 0; j < inst.members().size(); ++j) {
    if (!inst.members()[j].support().empty()) actives.push_back(j);
  }

  std::size_t next = 0;
  for (std::size_t j : actives) {
    for (DataValue row : inst.members()[j].support()) {
      for (DataValue col : build.columns) {
        build.cell_var[{j, row, col}] = next++;
      }
    }
    build.count_var[j] = next++;
  }
  build.sys.num_vars = next;

  auto blank_row = [&](Relation rel, const Rat& rhs) {
    LinearRow row;
    row.coeffs.assign(next, Rat(0));
    row.rel = rel;
    row.rhs = rhs;
    return row;
  };

  // Each member's table: every row of it sums to the member's use count, and
  // no column of it exceeds that count (injectivity of the pushforwards).
  for (std::size_t j : actives) {
    for (DataValue row_val : inst.members()[j].support()) {
      LinearRow row = blank_row(Relation::Eq, Rat(0));
      for (DataValue col : build.columns) row.coeffs[build.cell_var.at({j, row_val, col})] = 1;
      row.coeffs[build.count_var.at(j)] = -1;
      build.sys.rows.push_back(std::move(row));
    }
    for (DataValue col : build.columns) {
      LinearRow row = blank_row(Relation::Le, Rat(0));
      for (DataValue row_val : inst.members()[j].support()) {
        row.coeffs[build.cell_var.at({j, row_val, col})] = 1;
      }
      row.coeffs[build.count_var.at(j)] = -1;
      build.sys.rows.push_back(std::move(row));
    }
  }

  // Landing-site balance: contributions at every candidate value match the
  // target there, coordinate by coordinate.
  for (DataValue col : build.columns) {
    Tuple want = x.value(col);
    for (std::size_t c = 0; c < d; ++c) {
      LinearRow row = blank_row(Relation::Eq, Rat(want[c]));
      for (std::size_t j : actives) {
        for (const auto& [row_val, t] : inst.members()[j].entries()) {
          if (t[c] == 0) continue;
          row.coeffs[build.cell_var.at({j, row_val, col})] += Rat(t[c]);
        }
      }
      build.sys.rows.push_back(std::move(row));
    }
  }

  // Fresh columns are interchangeable; order them by total mass to cut the
  // symmetric part of the search space.
  for (std::size_t f = 0; f + 1 < fresh.size(); ++f) {
    LinearRow row = blank_row(Relation::Ge, Rat(0));
    for (std::size_t j : actives) {
      for (DataValue row_val : inst.members()[j].support()) {
        row.coeffs[build.cell_var.at({j, row_val, fresh[f]})] += 1;
        row.coeffs[build.cell_var.at({j, row_val, fresh[f + 1]})] -= 1;
      }
    }
    build.sys.rows.push_back(std::move(row));
  }

  return build;
}

IlpBuild build_ilp(const ExpressibilityInstance& inst) {
  return build_ilp(inst, support_bound(inst) - inst.target().support().size());
}

namespace {

PermutationSumWitness witness_from_solution(const ExpressibilityInstance& inst,
                                            const IlpBuild& build,
                                            const std::vector<Int>& solution) {
  PermutationSumWitness witness;
  for (const auto& [j, count_idx] : build.count_var) {
    Int n = solution[count_idx];
    if (n == 0) continue;
    if (!to_int64(n)) throw BudgetExceeded("witness extraction: member count too large");
    std::map<std::pair<DataValue, DataValue>, Int> cells;
    for (DataValue row_val : inst.members()[j].support()) {
      for (DataValue col : build.columns) {
        const Int& c = solution[build.cell_var.at({j, row_val, col})];
        if (c != 0) cells[{row_val, col}] = c;
      }
    }
    Histogram h = Histogram::make(inst.members()[j].support(), std::move(cells));
    if (h.degree() != n) {
      throw std::logic_error("witness extraction: table degree disagrees with use count");
    }
    for (const auto& part : decompose(h)) {
      witness.terms.push_back({j, part.to_injection()});
    }
  }
  return witness;
}

}  // namespace

ExpressibilityResult is_permutation_sum(const ExpressibilityInstance& inst, bool want_witness) {
  ExpressibilityResult res;

  bool any_active = false;
  for (const auto& v : inst.members()) {
    if (!v.support().empty()) any_active = true;
  }
  if (!any_active || inst.target().empty()) {
    res.yes = inst.target().empty();
    if (res.yes && want_witness) res.witness = PermutationSumWitness{};
    return res;
  }

  const std::size_t max_fresh = support_bound(inst) - inst.target().support().size();
  std::vector<std::size_t> schedule{0};
  for (std::size_t k = 1; k < max_fresh; k *= 2) schedule.push_back(k);
  if (max_fresh > 0) schedule.push_back(max_fresh);

  for (std::size_t k : schedule) {
    ++res.rounds;
    res.fresh_used = k;
    IlpBuild build = build_ilp(inst, k);
    IlpResult ilp = ilp_feasible(build.sys);
    res.stats.nodes += ilp.stats.nodes;
    res.stats.lp_calls += ilp.stats.lp_calls;
    res.stats.lp_pivots += ilp.stats.lp_pivots;
    res.stats.presolve_infeasible = res.stats.presolve_infeasible || ilp.stats.presolve_infeasible;
    if (ilp.feasible) {
      res.yes = true;
      if (want_witness) {
        PermutationSumWitness w = witness_from_solution(inst, build, ilp.solution);
        if (!verify_witness(inst, w)) {
          throw std::logic_error("is_permutation_sum: extracted witness fails verification");
        }
        res.witness = std::move(w);
      }
      return res;
    }
  }
  res.yes = false;
  return res;
}

bool verify_witness(const ExpressibilityInstance& inst, const PermutationSumWitness& witness) {
  DataVector sum(inst.dim());
  for (const auto& term : witness.terms) {
    if (term.base >= inst.members().size()) {
      throw std::invalid_argument("witness: member index out of range");
    }
    sum += apply_injection(inst.members()[term.base], term.injection);
  }
  return sum == inst.target();
}

namespace {

struct FastSolve {
  bool yes = false;
  std::vector<Int> weight_coeffs;                       // per member, signed
  std::vector<std::pair<std::size_t, DataValue>> gens;  // (member, support value)
  // per target-support value (in id order): signed coefficients over gens
  std::vector<std::pair<DataValue, std::vector<Int>>> place_coeffs;
};

FastSolve fast_solve(const ExpressibilityInstance& inst, const ReversibleSetCertificate& cert) {
  if (cert.members != inst.members() || cert.reversals.size() != inst.members().size()) {
    throw std::invalid_argument("fast decision: certificate does not match the member list");
  }
  const std::size_t d = inst.dim();
  FastSolve out;

  std::vector<Tuple> weights;
  weights.reserve(inst.members().size());
  for (const auto& v : inst.members()) weights.push_back(v.weight());
  SubgroupSolver weight_solver(d, weights);
  auto z = weight_solver.solve(inst.target().weight());
  if (!z) return out;
  out.weight_coeffs = std::move(*z);

  std::vector<Tuple> gen_values;
  for (std::size_t j = 0; j < inst.members().size(); ++j) {
    for (const auto& [a, t] : inst.members()[j].entries()) {
      out.gens.emplace_back(j, a);
      gen_values.push_back(t);
    }
  }
  SubgroupSolver value_solver(d, gen_values);
  for (const auto& [a, t] : inst.target().entries()) {
    auto c = value_solver.solve(t);
    if (!c) return out;
    out.place_coeffs.emplace_back(a, std::move(*c));
  }
  out.yes = true;
  return out;
}

PermutationSumWitness synthesize_from_solve(const ExpressibilityInstance& inst,
                                            const ReversibleSetCertificate& cert,
                                            const FastSolve& solve) {
  const std::vector<DataVector>& members = inst.members();
  PermutationSumWitness witness;

  // Values any construction below may touch.
  std::set<DataValue> touched;
  for (std::size_t j = 0; j < members.size(); ++j) {
    touched.insert(cert.reversals[j].set.begin(), cert.reversals[j].set.end());
    for (DataValue a : members[j].support()) touched.insert(a);
  }
  std::set<DataValue> used = touched;
  for (DataValue a : inst.target().support()) used.insert(a);
  std::vector<DataValue> fresh = fresh_values(used, 2);
  const DataValue sink = fresh[0];    // shared fresh landing value
  const DataValue shuttle = fresh[1];  // shared fresh staging value

  auto copies_of = [](const Int& n) {
    auto c = to_int64(n);
    if (!c) throw BudgetExceeded("witness synthesis: coefficient too large to materialize");
    return *c;
  };

  // Nonnegative member multiples matching the target weight: negative
  // coefficients are routed through each member's reversal multipliers.
  Tuple total_weight = inst.target().weight();
  std::vector<Int> mu(members.size(), 0);
  if (!total_weight.is_zero()) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      const Int& zj = solve.weight_coeffs[j];
      if (zj > 0) {
        mu[j] += zj;
      } else if (zj < 0) {
        for (std::size_t k = 0; k < members.size(); ++k) {
          mu[k] += (-zj) * cert.reversals[j].multipliers[k];
        }
      }
    }
  }

  // Guard against materializing an absurd term count.
  {
    std::size_t max_reversal = 1;
    for (const auto& rev : cert.reversals) {
      max_reversal = std::max(max_reversal, rev.witness.terms.size() + 1);
    }
    Int estimate = 0;
    Int width = Int(touched.size()) + 1;
    for (std::size_t j = 0; j < members.size(); ++j) {
      estimate += mu[j] * width * Int(2 + cert.reversals[j].witness.terms.size());
    }
    for (const auto& [alpha, coeffs] : solve.place_coeffs) {
      for (std::size_t g = 0; g < coeffs.size(); ++g) {
        estimate += abs(coeffs[g]) * Int(max_reversal) * Int(max_reversal);
      }
    }
    if (estimate > 10000000) {
      throw BudgetExceeded("witness synthesis: too many terms to materialize");
    }
  }

  // Weight block: moves the full target weight onto the sink value.
  if (!total_weight.is_zero()) {
    std::set<DataValue> s;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (mu[j] > 0 && !members[j].support().empty()) {
        s.insert(cert.reversals[j].set.begin(), cert.reversals[j].set.end());
      }
    }
    std::set<DataValue> s_plus = s;
    s_plus.insert(sink);
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (mu[j] == 0 || members[j].support().empty()) continue;
      std::int64_t times = copies_of(mu[j]);
      for (std::int64_t c = 0; c < times; ++c) {
        for (std::size_t i = 0; i < s_plus.size(); ++i) {
          witness.terms.push_back(
              {j, FiniteInjection::rotation_of(s_plus, i).restricted_to(members[j].support())});
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
          FiniteInjection rot = FiniteInjection::rotation_of(s, i);
          for (const auto& rterm : cert.reversals[j].witness.terms) {
            witness.terms.push_back({rterm.base, compose(rterm.injection, rot)});
          }
        }
      }
    }
  }

  // Place blocks: one per target support value, moving that value's tuple
  // from the sink onto its place while draining the staging value.
  for (const auto& [alpha, coeffs] : solve.place_coeffs) {
    // Pair multiset: (member, support value) occurrences summing to the
    // target tuple at alpha; negative coefficients expand through the
    // member's reversal witness, value by value.
    std::vector<std::pair<std::size_t, DataValue>> pairs;
    for (std::size_t g = 0; g < coeffs.size(); ++g) {
      const Int& cg = coeffs[g];
      if (cg == 0) continue;
      auto [j, gamma] = solve.gens[g];
      std::int64_t times = copies_of(abs(cg));
      if (cg > 0) {
        for (std::int64_t c = 0; c < times; ++c) pairs.emplace_back(j, gamma);
      } else {
        for (std::int64_t c = 0; c < times; ++c) {
          for (const auto& rterm : cert.reversals[j].witness.terms) {
            const auto& m = rterm.injection.map();
            for (const auto& [src, dst] : m) {
              if (dst == gamma && !members[rterm.base].value(src).is_zero()) {
                pairs.emplace_back(rterm.base, src);
              }
            }
          }
        }
      }
    }

    const bool via_shuttle = touched.count(alpha) > 0;
    const DataValue anchor = via_shuttle ? shuttle : alpha;
    std::size_t first_new = witness.terms.size();

    FiniteInjection drain = FiniteInjection::swap_of(anchor, sink);
    for (const auto& [j, gamma] : pairs) {
      std::map<DataValue, DataValue> swap_map;
      for (DataValue a : members[j].support()) swap_map[a] = a;
      swap_map[gamma] = anchor;
      swap_map[anchor] = gamma;
      FiniteInjection mover = FiniteInjection::from_map(std::move(swap_map));
      witness.terms.push_back({j, mover.restricted_to(members[j].support())});
      for (const auto& rterm : cert.reversals[j].witness.terms) {
        witness.terms.push_back(
            {rterm.base, compose(compose(rterm.injection, mover), drain)});
      }
    }
    if (via_shuttle) {
      FiniteInjection land = FiniteInjection::swap_of(shuttle, alpha);
      for (std::size_t t = first_new; t < witness.terms.size(); ++t) {
        witness.terms[t].injection = compose(witness.terms[t].injection, land);
      }
    }
  }

  if (!verify_witness(inst, witness)) {
    throw std::logic_error("witness synthesis: constructed witness fails verification");
  }
  return witness;
}

}  // namespace

FastResult fast_is_permutation_sum(const ExpressibilityInstance& inst,
                                   const ReversibleSetCertificate& cert, bool want_witness) {
  FastSolve solve = fast_solve(inst, cert);
  FastResult res;
  res.yes = solve.yes;
  if (res.yes && want_witness) {
    res.witness = synthesize_from_solve(inst, cert, solve);
  }
  return res;
}

PermutationSumWitness synthesize_reversible_witness(const ExpressibilityInstance& inst,
                                                    const ReversibleSetCertificate& cert) {
  FastSolve solve = fast_solve(inst, cert);
  if (!solve.yes) {
    throw std::invalid_argument("witness synthesis: subgroup conditions do not hold");
  }
  return synthesize_from_solve(inst, cert, solve);
}

}  // namespace datavec
