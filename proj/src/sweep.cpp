#include "qbridge/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <sstream>
#include <thread>

namespace qbridge {

namespace {

Vec3 werner_diag(double x) { return Vec3::Constant(-x); }

bool uses_q(BridgeFamily f) { return f == BridgeFamily::WP; }

double fidelity_closed(const SweepSpec& spec, double x, double q) {
  const TwoQubitState closed = family_bridge_closed(spec, x, q);
  return uses_q(spec.family) ? fidelity_eq11(closed, spec.signal) : fidelity_eq10(closed, spec.signal);
}

SweepRow evaluate(const SweepSpec& spec, double x, double q) {
  const TwoQubitState b = family_bridge(spec, x, q);
  SweepRow row{spec.family, x, uses_q(spec.family) ? std::optional<double>(q) : std::nullopt};
  row.dyadic_diag = to_pauli(b).c.diagonal();
  const EntanglementReport r = report(b);
  row.concurrence = r.concurrence;
  row.telp = r.telp;
  row.fidelity_oracle = teleport(b, spec.signal).mean_fidelity;
  row.fidelity_closed = fidelity_closed(spec, x, q);
  return row;
}

// Smallest x with pred(x) true, assuming pred is false at lo and true at hi.
template <typename Pred>
double bisect(Pred pred, double lo, double hi, double tol) {
  if (pred(lo) || !pred(hi)) throw std::invalid_argument("threshold: predicate does not change on the interval");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

// Quoted threshold values, checked against bisection.
struct QuotedThreshold {
  BridgeFamily family;
  const char* formula;
  double value;
};

constexpr QuotedThreshold kQuoted[] = {
    {BridgeFamily::WW, "concurrence_threshold", 0.578}, {BridgeFamily::WX, "concurrence_threshold", 0.41},
    {BridgeFamily::WB, "concurrence_threshold", 0.34},  {BridgeFamily::WP, "concurrence_threshold", 0.33},
    {BridgeFamily::WW, "telp_threshold", 0.8},          {BridgeFamily::WX, "telp_threshold", 0.6},
    {BridgeFamily::WB, "telp_threshold", 0.5},
};

}  // namespace

std::string_view to_string(BridgeFamily f) {
  switch (f) {
    case BridgeFamily::WW: return "ww";
    case BridgeFamily::WB: return "wb";
    case BridgeFamily::WX: return "wx";
    case BridgeFamily::WP: return "wp";
  }
  return "?";
}

BridgeFamily parse_family(std::string_view name) {
  for (BridgeFamily f : {BridgeFamily::WW, BridgeFamily::WB, BridgeFamily::WX, BridgeFamily::WP}) {
    std::string upper(to_string(f));
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    if (name == to_string(f) || name == upper) return f;
  }
  throw std::invalid_argument("unknown bridge family '" + std::string(name) + "'");
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void SweepSpec::validate() const {
  if (count < 2) throw std::invalid_argument("sweep grid needs at least 2 points");
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) throw std::invalid_argument("sweep grid must lie in [0, 1]");
  if (family == BridgeFamily::WX && !is_physical_dyadic(triple))
    throw std::invalid_argument("WX triple does not describe a state");
  if (family == BridgeFamily::WP) {
    if (q_values.empty()) throw std::invalid_argument("WP sweep needs at least one q");
    for (double q : q_values)
      if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
  }
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = i == count - 1 ? stop : start + (stop - start) * i / (count - 1);
  return xs;
}

TwoQubitState family_partner(const SweepSpec& spec, double q) {
  switch (spec.family) {
    case BridgeFamily::WW: throw std::logic_error("family_partner: WW partner depends on x");
    case BridgeFamily::WB: return bell(BellKind::PsiMinus);
    case BridgeFamily::WX: return bell_diagonal(spec.triple);
    case BridgeFamily::WP: return pure(q);
  }
  throw std::logic_error("family_partner: bad family");
}

TwoQubitState family_bridge(const SweepSpec& spec, double x, double q) {
  const TwoQubitState left = werner(x);
  const TwoQubitState right = spec.family == BridgeFamily::WW ? werner(x) : family_partner(spec, q);
  const auto outcomes = swap(left, right);
  return canonical_bridge(outcomes).state;
}

TwoQubitState family_bridge_closed(const SweepSpec& spec, double x, double q) {
  switch (spec.family) {
    case BridgeFamily::WW: return xx_bridge_closed(werner_diag(x), werner_diag(x));
    case BridgeFamily::WB: return xx_bridge_closed(werner_diag(x), Vec3::Constant(-1.0));
    case BridgeFamily::WX: return xx_bridge_closed(werner_diag(x), spec.triple);
    case BridgeFamily::WP: return xp_bridge_closed(werner_diag(x), q);
  }
  throw std::logic_error("family_bridge_closed: bad family");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> xs = spec.grid();
  const std::vector<double> qs = uses_q(spec.family) ? spec.q_values : std::vector<double>{1.0};

  std::vector<std::pair<double, double>> points;  // (q, x)
  for (double q : qs)
    for (double x : xs) points.emplace_back(q, x);

  std::vector<SweepRow> rows(points.size());
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  const std::size_t chunk = (points.size() + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < points.size(); begin += chunk) {
    const std::size_t end = std::min(points.size(), begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) rows[i] = evaluate(spec, points[i].second, points[i].first);
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "family,x,p_or_q,c11,c22,c33,concurrence,telp,fidelity_oracle,fidelity_closed\n";
  for (const SweepRow& r : rows) {
    out << to_string(r.family) << ',' << format_number(r.x) << ',' << optional_number(r.q) << ','
        << format_number(r.dyadic_diag(0)) << ',' << format_number(r.dyadic_diag(1)) << ','
        << format_number(r.dyadic_diag(2)) << ',' << format_number(r.concurrence) << ',' << format_number(r.telp)
        << ',' << format_number(r.fidelity_oracle) << ',' << format_number(r.fidelity_closed) << '\n';
  }
  return out.str();
}

double concurrence_threshold(const SweepSpec& spec, double q, double lo, double hi, double tol) {
  return bisect([&](double x) { return concurrence(family_bridge(spec, x, q)) > 1e-12; }, lo, hi, tol);
}

double telp_threshold(const SweepSpec& spec, double q, double lo, double hi, double tol) {
  return bisect([&](double x) { return telp(family_bridge(spec, x, q)) > 1.0; }, lo, hi, tol);
}

std::vector<AuditRow> run_discrepancy(const SweepSpec& spec) {
  spec.validate();
  const BridgeFamily fam = spec.family;
  const std::vector<double> qs = uses_q(fam) ? spec.q_values : std::vector<double>{1.0};
  std::vector<AuditRow> rows;
  auto add = [&](const char* formula, std::optional<double> x, std::optional<double> q, double closed, double oracle) {
    rows.push_back(AuditRow{formula, fam, x, q, closed, oracle});
  };

  for (double q : qs) {
    const std::optional<double> qcol = uses_q(fam) ? std::optional<double>(q) : std::nullopt;
    for (double x : spec.grid()) {
      const TwoQubitState b = family_bridge(spec, x, q);
      const Mat3 c = to_pauli(b).c;
      // Concurrence written as 3/2 tr(C C^T) - 1/2.
      add("eq4_concurrence", x, qcol, std::max(0.0, 1.5 * (c * c.transpose()).trace() - 0.5), concurrence(b));
      if (uses_q(fam)) {
        const Mat4 printed = xp_bridge_printed(werner_diag(x), q);
        const double tr = printed.trace().real();
        add("eq7_trace", x, qcol, tr, b.rho().trace().real());
        add("eq7_entry_14", x, qcol, printed(0, 3).real() / tr, b.entry(0, 3));
        add("eq7_entry_23", x, qcol, printed(1, 2).real() / tr, b.entry(1, 2));
      } else {
        const Vec3 right = fam == BridgeFamily::WW ? werner_diag(x)
                           : fam == BridgeFamily::WB ? Vec3::Constant(-1.0)
                                                     : spec.triple;
        add("eq5_trace", x, qcol, xx_bridge_raw(werner_diag(x), right).trace().real(), b.rho().trace().real());
      }
      add(uses_q(fam) ? "eq11_fidelity" : "eq10_fidelity", x, qcol, fidelity_closed(spec, x, q),
          teleport(b, spec.signal).mean_fidelity);
    }
  }

  for (const QuotedThreshold& t : kQuoted) {
    if (t.family != fam) continue;
    const bool conc = std::string_view(t.formula) == "concurrence_threshold";
    const double q = 1.0;  // the quoted WP value is for the maximally entangled partner
    const double derived = conc ? concurrence_threshold(spec, q, 0.0, 1.0) : telp_threshold(spec, q, 0.0, 1.0);
    add(t.formula, std::nullopt, uses_q(fam) ? std::optional<double>(q) : std::nullopt, t.value, derived);
  }
  return rows;
}

std::string audit_csv(const std::vector<AuditRow>& rows) {
  std::ostringstream out;
  out << "formula,family,x,p_or_q,closed_form_value,oracle_value,abs_diff\n";
  for (const AuditRow& r : rows) {
    out << r.formula << ',' << to_string(r.family) << ',' << optional_number(r.x) << ',' << optional_number(r.q)
        << ',' << format_number(r.closed_form_value) << ',' << format_number(r.oracle_value) << ','
        << format_number(r.abs_diff()) << '\n';
  }
  return out.str();
}

}  // namespace qbridge
