#pragma once

#include "seqtest/loss.hpp"

namespace seqtest {

/**
 * Ground-truth value of the stopping problem on a tiny recombining binomial
 * lattice for the log-likelihood walk (constant volatility). Lattice moves
 * are +/- sqrt(dclock); the up weight at each node is chosen so the posterior
 * is a martingale, which is how the hypothesis-conditional drift shows up in
 * the unconditional law. Backward induction with an exact min at every node
 * implicitly enumerates every stopping rule on the lattice. Intended for
 * solver regression only: n_steps above 6 is rejected.
 */
double brute_force_tree_value(double eta, const LossModel& loss, double cost, double horizon,
                              int n_steps, double prior);

} // namespace seqtest
