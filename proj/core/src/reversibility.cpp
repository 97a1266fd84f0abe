#include "datavec/reversibility.hpp"

#include <algorithm>
#include <stdexcept>

#include "datavec/errors.hpp"
#include "datavec/simplex.hpp"

namespace datavec {

namespace {

void check_members(const std::vector<DataVector>& members) {
  for (const auto& v : members) {
    if (v.dim() != members.front().dim()) {
      throw std::invalid_argument("reversibility: members have mixed dimensions");
    }
  }
}

std::size_t index_of(const DataVector& v, const std::vector<DataVector>& members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == v) return i;
  }
  throw std::invalid_argument("reversibility: vector does not occur in the member set");
}

// Nonnegative rational multipliers lambda with
//   sum_j lambda[j] * weight(members[j]) == -weight(members[index]),
// or nothing. Two cheap exact shortcuts keep the multipliers small in the
// common cases (zero weight; an exactly opposite member) before the general
// feasibility solve.
std::optional<std::vector<Rat>> weight_multipliers(std::size_t index,
                                                   const std::vector<DataVector>& members) {
  const std::size_t m = members.size();
  const std::size_t d = members[index].dim();
  Tuple target = -members[index].weight();
  std::vector<Rat> out(m, Rat(0));
  if (target.is_zero()) return out;
  for (std::size_t j = 0; j < m; ++j) {
    if (members[j].weight() == target) {
      out[j] = 1;
      return out;
    }
  }
  LinearSystem sys;
  sys.num_vars = m;
  for (std::size_t c = 0; c < d; ++c) {
    LinearRow row;
    row.rel = Relation::Eq;
    row.rhs = Rat(target[c]);
    row.coeffs.reserve(m);
    for (std::size_t j = 0; j < m; ++j) row.coeffs.push_back(Rat(members[j].weight()[c]));
    sys.rows.push_back(std::move(row));
  }
  LpResult lp = lp_feasible(sys);
  if (!lp.feasible) return std::nullopt;
  return lp.solution;
}

}  // namespace

std::optional<MemberReversal> member_reversal(std::size_t index,
                                              const std::vector<DataVector>& members) {
  if (index >= members.size()) {
    throw std::invalid_argument("reversibility: member index out of range");
  }
  check_members(members);
  auto lambda = weight_multipliers(index, members);
  if (!lambda) return std::nullopt;

  Int p = 1;
  for (const Rat& l : *lambda) p = int_lcm(p, rat_den(l));

  MemberReversal out;
  out.multipliers.assign(members.size(), Int(0));
  for (std::size_t j = 0; j < members.size(); ++j) {
    const Rat& l = (*lambda)[j];
    out.multipliers[j] = rat_num(l) * (p / rat_den(l));
  }
  out.multipliers[index] += p - 1;

  const DataVector& v = members[index];
  out.set = v.support();
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (out.multipliers[j] > 0) {
      for (DataValue a : members[j].support()) out.set.insert(a);
    }
  }

  const std::size_t n = out.set.size();
  // Sanity guard against materializing an absurd number of copies.
  Int term_estimate = n == 0 ? Int(0) : Int(n) - 1;
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (!members[j].support().empty()) term_estimate += out.multipliers[j] * Int(n);
  }
  if (term_estimate > 10000000) {
    throw BudgetExceeded("reversal witness: too many terms to materialize");
  }

  if (!v.support().empty()) {
    for (std::size_t t = 1; t < n; ++t) {
      out.witness.terms.push_back(
          {index, FiniteInjection::rotation_of(out.set, t).restricted_to(v.support())});
    }
  }
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (out.multipliers[j] == 0 || members[j].support().empty()) continue;
    auto copies = to_int64(out.multipliers[j]);
    if (!copies) throw BudgetExceeded("reversal witness: multiplier too large to materialize");
    for (std::int64_t c = 0; c < *copies; ++c) {
      for (std::size_t t = 0; t < n; ++t) {
        out.witness.terms.push_back(
            {j, FiniteInjection::rotation_of(out.set, t).restricted_to(members[j].support())});
      }
    }
  }
  return out;
}

bool is_reversible_in(std::size_t index, const std::vector<DataVector>& members) {
  if (index >= members.size()) {
    throw std::invalid_argument("reversibility: member index out of range");
  }
  check_members(members);
  return weight_multipliers(index, members).has_value();
}

bool is_reversible_in(const DataVector& v, const std::vector<DataVector>& members) {
  return is_reversible_in(index_of(v, members), members);
}

ReversibilityReport is_reversible_set(const std::vector<DataVector>& members) {
  ReversibilityReport report;
  report.member_reversible.assign(members.size(), 0);
  ReversibleSetCertificate cert;
  cert.members = members;
  cert.reversals.reserve(members.size());
  bool all = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto rev = member_reversal(i, members);
    report.member_reversible[i] = rev.has_value();
    if (rev) {
      cert.reversals.push_back(std::move(*rev));
    } else {
      all = false;
    }
  }
  report.reversible = all;
  if (all) report.certificate = std::move(cert);
  return report;
}

PermutationSumWitness reversal_witness(std::size_t index, const std::vector<DataVector>& members) {
  auto rev = member_reversal(index, members);
  if (!rev) {
    throw std::invalid_argument("reversal witness: member is not reversible in the set");
  }
  return std::move(rev->witness);
}

PermutationSumWitness reversal_witness(const DataVector& v, const std::vector<DataVector>& members) {
  return reversal_witness(index_of(v, members), members);
}

}  // namespace datavec
