#pragma once

#include "seqtest/value_surface.hpp"

namespace seqtest {

/**
 * Solves the same stopping problem after moving to the information clock in
 * time and to log-likelihood space in state. There the state diffuses with
 * unit volatility and drift tanh(l/2)/2, the running cost becomes
 * cost / eta^2 evaluated at the de-clocked time, and the obstacle is the loss
 * composed with the sigmoid. The solution is mapped back onto the standard
 * (t, p) grid by bilinear interpolation, so results are directly comparable
 * with solve_value. Dirichlet data equal to the obstacle is imposed at
 * l = +/- l_max, which is far inside the stopping region for the losses here.
 */
ValueSurface solve_value_timechanged(const VolatilityCurve& eta, const LossModel& loss, double cost,
                                     int n_space, int n_time, double l_max = 12.0,
                                     int n_l = 1200);

} // namespace seqtest
