#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "kpwave/grid.hpp"
#include "kpwave/material.hpp"
#include "kpwave/spectral.hpp"

// Reference implementations that share no code with the solver. They are slow on
// purpose and only meant for small inputs.
namespace kpwave::validation {

/// c i k_x DFT(U^p) evaluated by direct summation over all samples, in the half-spectrum
/// layout (ny rows, nx/2 + 1 columns) with the 1/(nx ny) normalisation.
/// c = -3 s (quadratic) or -2 s (cubic). The two-thirds mask keeps |m_x| <= nx/3 and
/// |m_y| <= ny/3. Cost O((nx ny)^2).
std::vector<std::complex<double>> brute_force_nonlinear(const EquationSpec& spec,
                                                        const Field2D& field, Dealias dealias);

/// First crossing distance of the characteristics of U_chi + c(U) U_tau = 0 found by
/// launching `samples` characteristics from a periodic profile and intersecting
/// neighbours: chi = (tau_{j+1} - tau_j) / (c_j - c_{j+1}) when c_j > c_{j+1}.
/// c = 3 beta U for the quadratic and -beta3 U^2 for the cubic reduction.
std::optional<double> characteristic_crossing(const std::function<double(double)>& profile,
                                              double period, EquationKind kind, double coeff,
                                              std::size_t samples = 200000);

/// Max-norm of a - b divided by the max-norm of b (or the plain max-norm if b is zero).
double relative_max_error(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b);

}  // namespace kpwave::validation
