#include "hetnet/loadopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/format.hpp"

namespace hetnet {

RateMatrix build_rate_matrix(const LinkTable& table, std::size_t max_candidates) {
  if (!table.has_dense()) throw Error(ErrorKind::OutOfRange, "link table", "rate matrix needs dense links");
  RateMatrix m(table.bs_count());
  std::vector<RateMatrix::Entry> row;
  for (std::size_t u = 0; u < table.user_count(); ++u) {
    row.clear();
    for (std::size_t b = 0; b < table.bs_count(); ++b) {
      const double s = sinr(table, u, b, SinrMode::Full);
      const double c = table.bandwidth_hz(table.bs(b).band_index) * std::log2(1.0 + s);
      if (c > 0.0 && std::isfinite(c)) row.push_back({static_cast<std::uint32_t>(b), c});
    }
    if (max_candidates > 0 && row.size() > max_candidates) {
      auto better = [](const RateMatrix::Entry& a, const RateMatrix::Entry& b) {
        return a.rate > b.rate || (a.rate == b.rate && a.bs < b.bs);
      };
      std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(max_candidates), row.end(), better);
      row.resize(max_candidates);
    }
    m.add_user(row);
  }
  return m;
}

void FractionalAssociation::add_user(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.bs < b.bs; });
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  offsets_.push_back(entries_.size());
}

double FractionalAssociation::fraction(std::size_t user, std::size_t bs) const {
  for (const auto& e : row(user)) {
    if (e.bs == bs) return e.x;
  }
  return 0.0;
}

void check_solver_params(const SolverParams& p) {
  if (!(p.step0 > 0.0)) throw Error(ErrorKind::OutOfRange, "solver.step0", "must be > 0");
  if (p.max_iters < 1) throw Error(ErrorKind::OutOfRange, "solver.max_iters", "must be >= 1");
  if (!(p.gap_tol > 0.0)) throw Error(ErrorKind::OutOfRange, "solver.gap_tol", "must be > 0");
}

double DualState::relative_gap() const {
  return (best_dual - best_primal) / std::max(1.0, std::abs(best_primal));
}

namespace {

double load_penalty(std::span<const std::uint32_t> load) {
  double s = 0.0;
  for (auto k : load) {
    if (k > 1) s += k * std::log(static_cast<double>(k));
  }
  return s;
}

}  // namespace

RelaxedSolution solve_relaxed(const RateMatrix& rates, const SolverParams& params, std::vector<TraceRow>* trace) {
  check_solver_params(params);
  const auto users = rates.user_count();
  const auto stations = rates.bs_count();
  for (std::size_t u = 0; u < users; ++u) {
    if (rates.row(u).empty()) {
      throw Error(ErrorKind::NoFeasibleUser, "user " + std::to_string(u), "all rates are zero");
    }
  }

  std::vector<double> log_rate;
  std::vector<std::size_t> offsets{0};
  std::vector<bool> reachable(stations, false);
  for (std::size_t u = 0; u < users; ++u) {
    for (const auto& e : rates.row(u)) {
      log_rate.push_back(std::log(e.rate));
      reachable[e.bs] = true;
    }
    offsets.push_back(log_rate.size());
  }
  const auto reachable_count = static_cast<double>(std::count(reachable.begin(), reachable.end(), true));

  RelaxedSolution sol;
  auto& st = sol.dual;
  // Stations nobody can reach carry zero load at the optimum (mu = -inf).
  const double mu0 = users == 0 ? 1.0 : 1.0 + std::log(static_cast<double>(users) / reachable_count);
  st.mu.assign(stations, -std::numeric_limits<double>::infinity());
  for (std::size_t b = 0; b < stations; ++b) {
    if (reachable[b]) st.mu[b] = mu0;
  }
  st.best_dual = std::numeric_limits<double>::infinity();
  st.best_primal = -std::numeric_limits<double>::infinity();

  std::vector<std::uint32_t> choice(users);
  std::vector<std::uint32_t> history;  // per iteration, per user: position in the row
  std::vector<std::uint32_t> load(stations);
  std::vector<double> grad(stations);

  int t = 0;
  while (t < params.max_iters) {
    ++t;
    double user_part = 0.0;
    double primal = 0.0;
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t u = 0; u < users; ++u) {
      auto row = rates.row(u);
      std::size_t best_j = 0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < row.size(); ++j) {
        const double v = log_rate[offsets[u] + j] - st.mu[row[j].bs];
        if (v > best_v) {
          best_v = v;
          best_j = j;
        }
      }
      choice[u] = static_cast<std::uint32_t>(best_j);
      user_part += best_v;
      primal += log_rate[offsets[u] + best_j];
      ++load[row[best_j].bs];
    }
    history.insert(history.end(), choice.begin(), choice.end());

    double station_part = 0.0;
    double norm2 = 0.0;
    for (std::size_t b = 0; b < stations; ++b) {
      if (!reachable[b]) {
        grad[b] = 0.0;
        continue;
      }
      const double k_hat = load_response(st.mu[b]);
      station_part += k_hat;
      grad[b] = k_hat - static_cast<double>(load[b]);
      norm2 += grad[b] * grad[b];
    }
    primal -= load_penalty(load);

    const double dual = user_part + station_part;
    st.best_dual = std::min(st.best_dual, dual);
    if (primal > st.best_primal) {
      st.best_primal = primal;
      st.best_primal_assignment.resize(users);
      for (std::size_t u = 0; u < users; ++u) st.best_primal_assignment[u] = rates.row(u)[choice[u]].bs;
    }
    st.iteration = t;
    const double gap = st.relative_gap();
    if (trace) trace->push_back({t, dual, primal, gap});
    if (gap <= params.gap_tol || norm2 == 0.0) break;

    const double step = params.step0 / std::sqrt(static_cast<double>(t)) / std::sqrt(norm2);
    for (std::size_t b = 0; b < stations; ++b) {
      if (reachable[b]) st.mu[b] -= step * grad[b];
    }
  }

  // Ergodic average of the user step over the last ceil(10%) iterations.
  const auto window = static_cast<std::size_t>(std::ceil(0.1 * t));
  const auto first = static_cast<std::size_t>(t) - window;
  std::vector<double> counts;
  for (std::size_t u = 0; u < users; ++u) {
    auto row = rates.row(u);
    counts.assign(row.size(), 0.0);
    for (std::size_t it = first; it < static_cast<std::size_t>(t); ++it) counts[history[it * users + u]] += 1.0;
    std::vector<FractionalAssociation::Entry> entries;
    for (std::size_t j = 0; j < row.size(); ++j) entries.push_back({row[j].bs, counts[j] / static_cast<double>(window)});
    sol.fractional.add_user(std::move(entries));
  }
  return sol;
}

Association round_association(const FractionalAssociation& fractional, const RateMatrix& rates) {
  if (fractional.user_count() != rates.user_count()) {
    throw Error(ErrorKind::OutOfRange, "fractional association", "user count differs from the rate matrix");
  }
  Association a{std::vector<std::size_t>(fractional.user_count()), PolicyTag::LoadAware};
  for (std::size_t u = 0; u < fractional.user_count(); ++u) {
    double best = -1.0;
    std::size_t best_bs = 0;
    for (const auto& e : fractional.row(u)) {  // rows are sorted by bs
      if (e.x > best) {
        best = e.x;
        best_bs = e.bs;
      }
    }
    a.serving[u] = best_bs;
  }
  return a;
}

double log_utility(const Association& association, const RateMatrix& rates) {
  if (association.serving.size() != rates.user_count()) {
    throw Error(ErrorKind::OutOfRange, "association", "user count differs from the rate matrix");
  }
  std::vector<std::uint32_t> load(rates.bs_count(), 0);
  double total = 0.0;
  for (std::size_t u = 0; u < association.serving.size(); ++u) {
    const auto b = association.serving[u];
    const double c = b < rates.bs_count() ? rates.rate(u, b) : 0.0;
    if (!(c > 0.0)) {
      throw Error(ErrorKind::UndefinedUtility, "user " + std::to_string(u), "served over a zero-rate link");
    }
    total += std::log(c);
    ++load[b];
  }
  return total - load_penalty(load);
}

Association solve_load_aware(const RateMatrix& rates, const SolverParams& params) {
  auto sol = solve_relaxed(rates, params);
  auto rounded = round_association(sol.fractional, rates);
  Association best_step{sol.dual.best_primal_assignment, PolicyTag::LoadAware};
  if (best_step.serving.size() == rates.user_count() && log_utility(best_step, rates) > log_utility(rounded, rates)) {
    return best_step;
  }
  return rounded;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "iteration,dual,primal,gap\n";
  for (const auto& r : trace) {
    out << r.iteration << ',' << format_sig6(r.dual) << ',' << format_sig6(r.primal) << ',' << format_sig6(r.gap)
        << '\n';
  }
}

}  // namespace hetnet
