#include "datavec/updn.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "textlex.hpp"

namespace datavec {

std::optional<std::size_t> Net::place_index(std::string_view name) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i] == name) return i;
  return std::nullopt;
}

Net parse_updn(std::string_view text) {
  textlex::Lexer lex(text);
  Net net;
  std::map<std::string, DataValue> vars;

  lex.expect_keyword("places");
  while (!lex.try_punct(";")) {
    std::string p = lex.expect_ident("place name");
    if (net.place_index(p)) lex.fail("duplicate place '" + p + "'");
    net.places.push_back(std::move(p));
  }
  if (net.places.empty()) throw ParseError(1, 1, "a net needs at least one place");

  auto var_id = [&](const std::string& name) {
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    const DataValue v{net.variable_names.size()};
    net.variable_names.push_back(name);
    vars.emplace(name, v);
    return v;
  };

  while (!lex.at_end()) {
    lex.expect_keyword("trans");
    Transition t;
    t.name = lex.expect_ident("transition name");
    for (const Transition& seen : net.transitions)
      if (seen.name == t.name) lex.fail("duplicate transition '" + t.name + "'");
    lex.expect_punct("{");
    while (!lex.try_punct("}")) {
      bool is_in;
      if (lex.at_keyword("in")) {
        is_in = true;
      } else if (lex.at_keyword("out")) {
        is_in = false;
      } else {
        lex.fail("expected 'in' or 'out'");
      }
      lex.next();
      const std::string pname = lex.expect_ident("place name");
      const auto p = net.place_index(pname);
      if (!p) lex.fail("unknown place '" + pname + "'");
      lex.expect_punct(":");
      auto& flow = is_in ? t.in[*p] : t.out[*p];
      do {
        flow[var_id(lex.expect_ident("variable name"))] += 1;
      } while (lex.try_punct(","));
      lex.expect_punct(";");
    }
    net.transitions.push_back(std::move(t));
  }
  return net;
}

DataVector parse_marking(const Net& net, std::string_view text, Interner& interner) {
  textlex::Lexer lex(text);
  std::map<DataValue, Tuple> entries;
  std::set<std::size_t> seen;
  while (!lex.at_end()) {
    const std::string pname = lex.expect_ident("place name");
    const auto p = net.place_index(pname);
    if (!p) lex.fail("unknown place '" + pname + "'");
    if (!seen.insert(*p).second) lex.fail("place '" + pname + "' listed twice");
    lex.expect_punct(":");
    lex.expect_punct("{");
    if (!lex.try_punct("}")) {
      do {
        const std::string vname = lex.expect_ident("data value");
        const DataValue v = interner.intern(vname);
        lex.expect_punct(":");
        const Int count = lex.expect_number("token count");
        if (count < 0) lex.fail("token counts are nonnegative");
        auto [it, inserted] = entries.try_emplace(v, net.places.size());
        it->second[*p] += count;
      } while (lex.try_punct(","));
      lex.expect_punct("}");
    }
    lex.expect_punct(";");
  }
  return DataVector::from_entries(net.places.size(), std::move(entries));
}

std::string format_marking(const Net& net, const DataVector& marking, const Interner& interner) {
  if (marking.dim() != net.places.size())
    throw std::invalid_argument("marking dimension does not match the net");
  std::string out;
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    if (p) out += " ";
    out += net.places[p] + ": {";
    bool first = true;
    for (const auto& [v, t] : marking.entries()) {
      if (t[p] == 0) continue;
      if (!first) out += ", ";
      first = false;
      out += interner.name(v) + ": " + int_to_string(t[p]);
    }
    out += "};";
  }
  return out;
}

bool is_marking(const Net& net, const DataVector& m) {
  if (m.dim() != net.places.size()) return false;
  for (const auto& [v, t] : m.entries())
    for (std::size_t p = 0; p < m.dim(); ++p)
      if (t[p] < 0) return false;
  return true;
}

std::set<DataValue> transition_variables(const Transition& t) {
  std::set<DataValue> vars;
  for (const auto& [p, flow] : t.in)
    for (const auto& [x, mult] : flow) vars.insert(x);
  for (const auto& [p, flow] : t.out)
    for (const auto& [x, mult] : flow) vars.insert(x);
  return vars;
}

DataVector displacement(const Net& net, const Transition& t) {
  std::map<DataValue, Tuple> entries;
  auto add = [&](const std::map<std::size_t, std::map<DataValue, Int>>& flows, int sign) {
    for (const auto& [p, flow] : flows)
      for (const auto& [x, mult] : flow) {
        auto [it, inserted] = entries.try_emplace(x, net.places.size());
        it->second[p] += sign * mult;
      }
  };
  add(t.out, +1);
  add(t.in, -1);
  return DataVector::from_entries(net.places.size(), std::move(entries));
}

bool enabled(const Net& net, const DataVector& marking, const Transition& t,
             const FiniteInjection& mode) {
  if (!is_marking(net, marking)) throw std::invalid_argument("not a marking of this net");
  for (DataValue x : transition_variables(t))
    if (!mode.defined_at(x)) throw std::invalid_argument("mode leaves a variable unbound");
  for (const auto& [p, flow] : t.in)
    for (const auto& [x, mult] : flow)
      if (marking.value(mode.apply(x))[p] < mult) return false;
  return true;
}

DataVector fire(const Net& net, const DataVector& marking, const Transition& t,
                const FiniteInjection& mode) {
  if (!enabled(net, marking, t, mode))
    throw std::invalid_argument("transition is not enabled under this mode");
  return marking + apply_injection(displacement(net, t), mode);
}

static std::vector<DataVector> displacements(const Net& net) {
  std::vector<DataVector> v;
  v.reserve(net.transitions.size());
  for (const Transition& t : net.transitions) v.push_back(displacement(net, t));
  return v;
}

static DataVector difference(const Net& net, const DataVector& from, const DataVector& to) {
  if (!is_marking(net, from) || !is_marking(net, to))
    throw std::invalid_argument("state equation takes two markings of the net");
  return to - from;
}

ExpressibilityResult state_equation(const Net& net, const DataVector& from, const DataVector& to,
                                    bool want_witness) {
  const auto inst =
      ExpressibilityInstance::make(net.places.size(), displacements(net), difference(net, from, to));
  return is_permutation_sum(inst, want_witness);
}

ReversibilityReport effects_reversible(const Net& net) {
  return is_reversible_set(displacements(net));
}

FastResult state_equation_fast(const Net& net, const DataVector& from, const DataVector& to,
                               const ReversibleSetCertificate& cert, bool want_witness) {
  const auto inst =
      ExpressibilityInstance::make(net.places.size(), displacements(net), difference(net, from, to));
  return fast_is_permutation_sum(inst, cert, want_witness);
}

namespace {

// All injective bindings of `vars` (in order) into `candidates` (in order),
// passed to `visit` as parallel image lists.
void bindings(const std::vector<DataValue>& vars, const std::vector<DataValue>& candidates,
              std::vector<DataValue>& picked, std::vector<char>& used,
              const std::function<void(const std::vector<DataValue>&)>& visit) {
  if (picked.size() == vars.size()) {
    visit(picked);
    return;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    picked.push_back(candidates[i]);
    bindings(vars, candidates, picked, used, visit);
    picked.pop_back();
    used[i] = 0;
  }
}

}  // namespace

std::vector<DataVector> random_walk(const Net& net, const DataVector& start, std::size_t steps,
                                    Rng& rng) {
  if (!is_marking(net, start)) throw std::invalid_argument("walk start is not a marking");
  std::vector<DataVector> trail{start};
  DataVector marking = start;
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<std::pair<std::size_t, FiniteInjection>> moves;
    const std::set<DataValue> supp = marking.support();
    for (std::size_t ti = 0; ti < net.transitions.size(); ++ti) {
      const Transition& t = net.transitions[ti];
      const std::set<DataValue> var_set = transition_variables(t);
      const std::vector<DataValue> vars(var_set.begin(), var_set.end());
      std::vector<DataValue> candidates(supp.begin(), supp.end());
      for (DataValue f : fresh_values(supp, vars.size())) candidates.push_back(f);
      std::vector<DataValue> picked;
      std::vector<char> used(candidates.size(), 0);
      bindings(vars, candidates, picked, used, [&](const std::vector<DataValue>& images) {
        std::map<DataValue, DataValue> m;
        for (std::size_t i = 0; i < vars.size(); ++i) m[vars[i]] = images[i];
        FiniteInjection mode = FiniteInjection::from_map(std::move(m));
        if (enabled(net, marking, t, mode)) moves.emplace_back(ti, std::move(mode));
      });
    }
    if (moves.empty()) break;
    const auto& [ti, mode] = moves[rng.below(moves.size())];
    marking = fire(net, marking, net.transitions[ti], mode);
    trail.push_back(marking);
  }
  return trail;
}

Net random_net(const NetShape& shape, Rng& rng) {
  if (shape.max_places == 0 || shape.max_transitions == 0 || shape.max_transition_vars == 0 ||
      shape.max_flow_vars == 0)
    throw std::invalid_argument("net shape bounds must be positive");
  Net net;
  const std::size_t nplaces = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_places)));
  for (std::size_t p = 0; p < nplaces; ++p) net.places.push_back("p" + std::to_string(p));

  std::map<std::string, DataValue> vars;
  auto var_id = [&](const std::string& name) {
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    const DataValue v{net.variable_names.size()};
    net.variable_names.push_back(name);
    vars.emplace(name, v);
    return v;
  };

  const std::size_t ntrans =
      static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_transitions)));
  for (std::size_t i = 0; i < ntrans; ++i) {
    Transition t;
    t.name = "t" + std::to_string(i);
    const std::size_t pool =
        static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_transition_vars)));
    auto draw_flow = [&](std::map<std::size_t, std::map<DataValue, Int>>& flows, std::size_t p) {
      const std::size_t count =
          static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_flow_vars)));
      for (std::size_t n = 0; n < count; ++n) {
        const std::size_t v = rng.below(pool);
        flows[p][var_id("x" + std::to_string(v))] += 1;
      }
    };
    bool any = false;
    for (std::size_t p = 0; p < nplaces; ++p) {
      if (rng.chance(1, 2)) {
        draw_flow(t.in, p);
        any = true;
      }
      if (rng.chance(1, 2)) {
        draw_flow(t.out, p);
        any = true;
      }
    }
    if (!any) draw_flow(t.out, rng.below(nplaces));
    net.transitions.push_back(std::move(t));
  }
  return net;
}

DataVector random_marking(const Net& net, std::size_t value_count, std::int64_t max_per_place,
                          Rng& rng) {
  if (max_per_place < 0) throw std::invalid_argument("token counts are nonnegative");
  std::map<DataValue, Tuple> entries;
  for (std::size_t i = 0; i < value_count; ++i) {
    auto [it, inserted] = entries.try_emplace(DataValue{i}, net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p)
      it->second[p] = Int(rng.range(0, max_per_place));
  }
  return DataVector::from_entries(net.places.size(), std::move(entries));
}

}  // namespace datavec
