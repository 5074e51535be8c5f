#include "plasma/classify.hpp"

#include <cmath>

#include "plasma/errors.hpp"

namespace plasma {

namespace {

bool near(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::optional<double> source_power(const CoefficientFn& w) {
  if (w.kind() == CoefKind::PowerT) return w.param1();
  if (w.kind() == CoefKind::InvT) return -1.0;
  return std::nullopt;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

/// Sign of the scenario's source on its own time window.
double source_sign(const Scenario& sc) {
  if (sc.w.kind() == CoefKind::ExpT)
    return sign_of(sc.w.scale() * sc.w.param1());
  return sign_of(sc.w.evaluate(0.5 * (sc.t0 + sc.t1)));
}

double diffusivity_sign(const Scenario& sc) {
  switch (sc.g.kind()) {
    case CoefKind::Constant:
    case CoefKind::Power:
    case CoefKind::Exponential:
      return sign_of(sc.g.scale() * sc.g.param1());
    default:
      return sign_of(sc.g.evaluate(0.5 * (sc.x_left + sc.x_right)));
  }
}

}  // namespace

nlohmann::json Classification::to_json() const {
  nlohmann::json j;
  j["precondition_ok"] = precondition_ok;
  auto case_json = [](const MatchedCase& m) {
    nlohmann::json c;
    c["case"] = case_name(m.id);
    c["family"] = family_name(m.id.family);
    c["index"] = m.id.index;
    c["params"] = m.params;
    if (!m.note.empty()) c["note"] = m.note;
    return c;
  };
  if (primary) j["primary"] = case_json(*primary);
  j["shadowed"] = nlohmann::json::array();
  for (const auto& m : shadowed) j["shadowed"].push_back(case_json(m));
  j["generators"] = nlohmann::json::array();
  for (const auto& g : generators) j["generators"].push_back(g.label);
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

Classification classify(const Scenario& sc) {
  Classification out;

  // Tabulated coefficients carry no recognizable shape, so they only
  // reach the rows that place no constraint on that coefficient: the
  // state-shape families need a named A, and most rows need a named W.
  // Those restrictions fall out of the per-family kind checks below.
  if (!sc.a.is_varying()) {
    out.reason = "state-independent A(u): outside the classified range "
                 "(the classification assumes A_u != 0)";
    return out;
  }
  if (!sc.w.is_varying()) {
    out.reason = "time-independent W(t): outside the classified range "
                 "(the classification assumes W_t != 0)";
    return out;
  }
  out.precondition_ok = true;

  // A shifted inverse square in u is the reflection v = u_inf - u of a
  // power law with exponent -2, with the source negated.
  if (sc.a.kind() == CoefKind::ShiftedInvSquare) {
    const double u_inf = sc.a.param1();
    Scenario v = sc;
    v.a = CoefficientFn::monomial(-2.0).scaled(sc.a.scale());
    v.w = sc.w.scaled(-1.0);
    Classification inner = classify(v);
    out.precondition_ok = inner.precondition_ok;
    out.reason = inner.reason;
    const std::string note =
        "recognized through the reflection v = u_inf - u (source negated)";
    auto annotate = [&](MatchedCase m) {
      m.params["u_inf"] = u_inf;
      m.note = m.note.empty() ? note : m.note + "; " + note;
      return m;
    };
    if (inner.primary) out.primary = annotate(*inner.primary);
    for (auto& m : inner.shadowed) out.shadowed.push_back(annotate(m));
    for (auto& g : inner.generators)
      out.generators.push_back(conjugate_by_reflection(g, u_inf));
    return out;
  }

  const auto wpow = source_power(sc.w);
  const bool w_exp = sc.w.kind() == CoefKind::ExpT;
  const bool g_const = sc.g.is_constant();
  const bool g_power = sc.g.kind() == CoefKind::Power;
  const bool g_exp = sc.g.kind() == CoefKind::Exponential;
  const double gs = diffusivity_sign(sc);
  const double ws = source_sign(sc);

  struct Candidate {
    CaseId id;
    bool match;
    std::map<std::string, double> params;
  };
  std::vector<Candidate> cands;
  auto add = [&](Family fam, int idx, bool match,
                 std::map<std::string, double> params) {
    cands.push_back({CaseId{fam, idx}, match, std::move(params)});
  };

  if (sc.a.kind() == CoefKind::Monomial) {
    const double m = sc.a.param1();
    const bool special_n = wpow && !near(m, -1.0) && m != 0.0 &&
                           near(*wpow, -(m + 1.0) / m);
    const double n = wpow ? *wpow : 0.0;
    const double k = g_power ? sc.g.param2() : 0.0;
    std::map<std::string, double> base{{"m", m}, {"g", gs}, {"w", ws}};
    auto with = [&](std::initializer_list<std::pair<const char*, double>> kv) {
      auto p = base;
      for (auto& [key, val] : kv) p[key] = val;
      return p;
    };
    // two-generator cases first, then specific-G cases, then the
    // case valid for every G
    add(Family::PowerState, 6, g_power && near(k, 2.0) && special_n,
        with({{"k", k}, {"n", n}}));
    add(Family::PowerState, 7, g_const && wpow.has_value(), with({{"n", n}}));
    add(Family::PowerState, 8, g_const && w_exp, base);
    add(Family::PowerState, 2, g_power && wpow.has_value(),
        with({{"k", k}, {"n", n}}));
    add(Family::PowerState, 3, g_power && w_exp, with({{"k", k}}));
    add(Family::PowerState, 4, g_exp && wpow.has_value(), with({{"n", n}}));
    add(Family::PowerState, 5, g_exp && w_exp, base);
    add(Family::PowerState, 1, special_n, with({{"n", n}}));
  }

  if (sc.a.kind() == CoefKind::ExpU) {
    add(Family::ExpState, 3, g_const, {});
    add(Family::ExpState, 1, true, {});
  }

  {
    const bool w_inv = wpow && near(*wpow, -1.0);
    const double a = g_power ? sc.g.param2() : 0.0;
    add(Family::AnyState, 5, g_const && w_inv, {});
    add(Family::AnyState, 1, g_power && w_inv, {{"a", a}});
    add(Family::AnyState, 2, g_exp && w_inv, {});
    add(Family::AnyState, 3, g_power && near(a, 2.0), {});
    add(Family::AnyState, 4, g_const, {});
  }

  for (auto& c : cands) {
    if (!c.match) continue;
    std::vector<Generator> gens = catalog(c.id, sc);
    if (gens.empty()) continue;  // all generators degenerate to zero
    MatchedCase mc{c.id, std::move(c.params), ""};
    if (!out.primary)
      out.primary = std::move(mc);
    else
      out.shadowed.push_back(std::move(mc));
    for (auto& g : gens) {
      bool dup = false;
      for (const auto& have : out.generators)
        if (same_ray(g, have)) {
          dup = true;
          break;
        }
      if (!dup) out.generators.push_back(std::move(g));
    }
  }

  if (!out.primary)
    out.reason = "coefficient shapes fit none of the classified cases";
  return out;
}

}  // namespace plasma
