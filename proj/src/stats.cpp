#include <girgnav/stats.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace girgnav {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw InvalidInput("wilson interval needs at least one trial");
    if (successes > trials) throw InvalidInput("more successes than trials");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    double lo = std::max(0.0, centre - half), hi = std::min(1.0, centre + half);
    if (successes == 0) lo = 0.0;
    if (successes == trials) hi = 1.0;
    return {lo, hi};
}

double path_length_yardstick(double n, double beta) {
    if (!(n > std::numbers::e)) throw InvalidInput("yardstick needs n > e");
    if (!(beta > 2.0 && beta < 3.0)) throw InvalidInput("yardstick needs 2 < beta < 3");
    return 2.0 * std::log(std::log(n)) / std::abs(std::log(beta - 2.0));
}

std::optional<double> refined_yardstick(double beta, double w_s, double w_t, double phi_s) {
    if (!(beta > 2.0 && beta < 3.0)) return std::nullopt;
    if (!(w_s > std::numbers::e) || !(w_t > std::numbers::e) || !(phi_s > 0.0) || !(phi_s < 1.0))
        return std::nullopt;
    auto term = [&](double w) { return std::max(0.0, std::log(-std::log(phi_s) / std::log(w))); };
    return (term(w_s) + term(w_t)) / std::abs(std::log(beta - 2.0));
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw InvalidInput("mean of empty input");
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double median(std::span<const double> xs) {
    if (xs.empty()) throw InvalidInput("median of empty input");
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double fit_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw InvalidInput("slope needs two or more paired points");
    const double mx = mean(xs), my = mean(ys);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw InvalidInput("slope undefined for constant x");
    return sxy / sxx;
}

} // namespace girgnav
