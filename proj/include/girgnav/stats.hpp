#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace girgnav {

/// Wilson score interval at 95% confidence. Throws InvalidInput if trials == 0
/// or successes > trials.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// 2 ln ln n / |ln(beta - 2)|. Requires n > e and 2 < beta < 3.
double path_length_yardstick(double n, double beta);

/// (ln log_{w_s}(1/phi_s) + ln log_{w_t}(1/phi_s)) / |ln(beta - 2)|, each
/// iterated log floored at zero; nullopt unless w_s, w_t > e and phi_s < 1.
std::optional<double> refined_yardstick(double beta, double w_s, double w_t, double phi_s);

double mean(std::span<const double> xs);
/// Throws InvalidInput on empty input.
double median(std::span<const double> xs);

/// Least-squares slope of ys on xs. Throws InvalidInput for fewer than two
/// points or constant xs.
double fit_slope(std::span<const double> xs, std::span<const double> ys);

} // namespace girgnav
