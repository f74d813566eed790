// coherent.hpp — coherent-state expansion weights q_n = e^{-|a|^2/2} a^n / sqrt(n!)
#pragma once

#include <vector>

namespace cascade {

// Single weight, evaluated in the log domain for stability at large n.
// n < 0 is a contract violation (throws std::invalid_argument).
double coherent_weight(double alpha, int n);

// q_0 .. q_nmax
std::vector<double> coherent_weight_table(double alpha, int nmax);

// 1 - sum_{n<=nmax} q_n^2, clamped at 0 (truncation tail mass).
double coherent_weight_tail(double alpha, int nmax);

} // namespace cascade
