#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hetnet/assoc.hpp"
#include "hetnet/radio.hpp"
#include "hetnet/rate_matrix.hpp"

namespace hetnet {

// c[u][b] = B_band * log2(1 + SINR_Full(u, b)). With max_candidates > 0 only
// the max_candidates highest-rate links of each user are kept (ties: lower
// index). Needs the dense link table.
RateMatrix build_rate_matrix(const LinkTable& table, std::size_t max_candidates = 0);

// Per-user fractions over the stored links of a rate matrix; rows sum to 1.
class FractionalAssociation {
 public:
  struct Entry {
    std::uint32_t bs = 0;
    double x = 0.0;
  };

  FractionalAssociation() : offsets_{0} {}

  void add_user(std::vector<Entry> entries);
  std::size_t user_count() const { return offsets_.size() - 1; }
  std::span<const Entry> row(std::size_t user) const {
    return {entries_.data() + offsets_[user], entries_.data() + offsets_[user + 1]};
  }
  double fraction(std::size_t user, std::size_t bs) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

struct SolverParams {
  double step0 = 1.0;
  int max_iters = 2000;
  double gap_tol = 1e-3;
};

void check_solver_params(const SolverParams& params);

// Station answer to price mu: the load maximising K (mu - ln K).
inline double load_response(double mu) { return std::exp(mu - 1.0); }

struct DualState {
  std::vector<double> mu;  // per-BS price; -inf for stations no user can reach
  int iteration = 0;
  double best_dual = 0.0;     // upper bound on the relaxed optimum
  double best_primal = 0.0;   // best binary user-step assignment seen
  std::vector<std::size_t> best_primal_assignment;

  double relative_gap() const;
};

struct TraceRow {
  int iteration = 0;
  double dual = 0.0;
  double primal = 0.0;
  double gap = 0.0;
};

struct RelaxedSolution {
  FractionalAssociation fractional;
  DualState dual;
};

// Dual decomposition of
//   max sum_{u,b} x_ub ln c_ub - sum_b K_b ln K_b,  K_b = sum_u x_ub,
// with per-BS prices mu: users pick argmax_b (ln c_ub - mu_b), stations answer
// with K_b = exp(mu_b - 1), and prices follow a normalised diminishing
// subgradient step. The returned fractions are the average of the user
// choices over the last ceil(10%) of iterations.
RelaxedSolution solve_relaxed(const RateMatrix& rates, const SolverParams& params = {},
                              std::vector<TraceRow>* trace = nullptr);

// Each user goes to its largest fraction (lowest index on ties).
Association round_association(const FractionalAssociation& fractional, const RateMatrix& rates);

// sum_u ln(c[u][b(u)] / K[b(u)]) in nats.
double log_utility(const Association& association, const RateMatrix& rates);

// Relaxed solve, then the better (by log_utility) of the rounded ergodic
// average and the best user-step assignment.
Association solve_load_aware(const RateMatrix& rates, const SolverParams& params = {});

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace hetnet
