#include <girgnav/hyperbolic.hpp>

#include <girgnav/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace girgnav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ModelParams induced_params(const HyperbolicParams& params) {
    ModelParams m;
    m.n = static_cast<double>(params.n);
    m.d = 1;
    m.beta = 2.0 * params.alpha_h + 1.0;
    m.w_min = std::exp(-params.c_h / 2.0);
    m.alpha = params.t_h == 0.0 ? kInfinity : 1.0 / params.t_h;
    m.kernel_c = 1.0;
    // Leading-order constant of the induced threshold: d_H <= R roughly means
    // |x_u - x_v| <= (1/pi) w_u w_v / (wmin n).
    m.c1 = 1.0 / std::numbers::pi;
    m.c2 = 1.0 / std::numbers::pi;
    m.ep3 = false;
    m.seed = params.seed;
    return m;
}

// Largest angular separation at which a point of radius r_u can still be
// within distance R of some point of radius >= r_lo. Returns pi for "any angle".
double max_angle(double r_u, double r_lo, double radius) {
    if (r_u + r_lo <= radius) return std::numbers::pi;
    const double cos_min =
        (std::cosh(r_u) * std::cosh(r_lo) - std::cosh(radius)) / (std::sinh(r_u) * std::sinh(r_lo));
    if (cos_min <= -1.0) return std::numbers::pi;
    if (cos_min >= 1.0) return 0.0;
    return std::min(std::numbers::pi, std::acos(cos_min) + 1e-9);
}

// Visits indices of a sorted cyclic coordinate list within `half_width` of `center`.
template <typename Visit>
void visit_window(const std::vector<std::pair<double, VertexId>>& sorted, double center, double half_width,
                  double period, Visit&& visit) {
    if (sorted.empty()) return;
    if (2.0 * half_width >= period) {
        for (auto& e : sorted) visit(e.second);
        return;
    }
    auto scan = [&](double lo, double hi) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(lo, VertexId{0}));
        for (; it != sorted.end() && it->first <= hi; ++it) visit(it->second);
    };
    const double lo = center - half_width;
    const double hi = center + half_width;
    if (lo < 0.0) {
        scan(lo + period, period);
        scan(0.0, hi);
    } else if (hi >= period) {
        scan(lo, period);
        scan(0.0, hi - period);
    } else {
        scan(lo, hi);
    }
}

} // namespace

double HyperbolicParams::radius() const { return 2.0 * std::log(static_cast<double>(n)) + c_h; }

void HyperbolicParams::validate() const {
    if (n < 1) throw InvalidInput("hyperbolic n must be positive");
    if (!(alpha_h > 0.0)) throw InvalidInput("alpha_h must be positive");
    if (!(t_h >= 0.0)) throw InvalidInput("t_h must be non-negative");
    if (!(radius() > 0.0)) throw InvalidInput("disk radius R = 2 ln n + c_h must be positive");
}

double sample_radius(const HyperbolicParams& params, double uniform) {
    if (!(uniform > 0.0 && uniform <= 1.0)) throw InvalidInput("sample_radius: uniform must lie in (0, 1]");
    const double a = params.alpha_h;
    const double radius = params.radius();
    if (uniform == 1.0) return radius;
    const double r = std::acosh(1.0 + uniform * (std::cosh(a * radius) - 1.0)) / a;
    return std::min(r, radius);
}

double hyperbolic_distance(const HyperbolicPoint& x, const HyperbolicPoint& y) {
    // cosh(rx)cosh(ry) - sinh(rx)sinh(ry)cos(dnu), rewritten without cancellation.
    const double half = std::sin((x.nu - y.nu) / 2.0);
    const double arg = std::cosh(x.r - y.r) + 2.0 * std::sinh(x.r) * std::sinh(y.r) * half * half;
    return std::acosh(std::max(1.0, arg));
}

double hyperbolic_edge_probability(const HyperbolicParams& params, double distance) {
    const double radius = params.radius();
    if (params.t_h == 0.0) return distance <= radius ? 1.0 : 0.0;
    return 1.0 / (1.0 + std::exp((distance - radius) / (2.0 * params.t_h)));
}

std::vector<HyperbolicPoint> sample_hyperbolic_points(const HyperbolicParams& params) {
    params.validate();
    Rng radius_rng(derive_seed(params.seed, {stream::radii}));
    Rng angle_rng(derive_seed(params.seed, {stream::angles}));
    std::vector<HyperbolicPoint> points(params.n);
    for (auto& p : points) p.r = sample_radius(params, radius_rng.uniform_open_closed());
    for (auto& p : points) {
        p.nu = kTwoPi * angle_rng.uniform();
        if (p.nu >= kTwoPi) p.nu = 0.0;
    }
    return points;
}

std::vector<std::pair<VertexId, VertexId>> hyperbolic_edges(const HyperbolicParams& params,
                                                              std::span<const HyperbolicPoint> points) {
    params.validate();
    const double radius = params.radius();
    std::vector<std::pair<VertexId, VertexId>> edges;
    const auto count = static_cast<VertexId>(points.size());

    if (params.t_h > 0.0) {
        Rng rng(derive_seed(params.seed, {stream::edges}));
        for (VertexId u = 0; u < count; ++u) {
            for (VertexId v = u + 1; v < count; ++v) {
                const double p = hyperbolic_edge_probability(params, hyperbolic_distance(points[u], points[v]));
                if (rng.uniform() < p) edges.emplace_back(u, v);
            }
        }
        return edges;
    }

    // Radial bands of width 2 ln 2, each sorted by angle.
    const double band_width = 2.0 * std::numbers::ln2;
    std::vector<std::vector<std::pair<double, VertexId>>> bands;
    std::vector<double> band_min_r;
    for (VertexId v = 0; v < count; ++v) {
        const auto b = static_cast<std::size_t>(std::max(0.0, std::floor((radius - points[v].r) / band_width)));
        if (b >= bands.size()) {
            bands.resize(b + 1);
            band_min_r.resize(b + 1, radius);
        }
        bands[b].emplace_back(points[v].nu, v);
        band_min_r[b] = std::min(band_min_r[b], points[v].r);
    }
    for (auto& band : bands) std::sort(band.begin(), band.end());

    for (VertexId u = 0; u < count; ++u) {
        for (std::size_t b = 0; b < bands.size(); ++b) {
            const double half = max_angle(points[u].r, band_min_r[b], radius);
            visit_window(bands[b], points[u].nu, half, kTwoPi, [&](VertexId v) {
                if (v > u && hyperbolic_distance(points[u], points[v]) <= radius) edges.emplace_back(u, v);
            });
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

ModelParams embedded_params(const HyperbolicParams& params) {
    if (!(params.alpha_h > 0.5)) throw InvalidInput("embedding requires alpha_h > 1/2");
    if (!(params.alpha_h < 1.0)) throw InvalidInput("embedding requires alpha_h < 1 so that beta < 3");
    if (!(params.t_h < 1.0)) throw InvalidInput("embedding requires t_h < 1 so that alpha > 1");
    return induced_params(params);
}

EmbeddedGirg embed_to_girg(const HyperbolicParams& params, std::span<const HyperbolicPoint> points) {
    EmbeddedGirg out{embedded_params(params), {}};
    out.vertices.reserve(points.size());
    const double n = static_cast<double>(params.n);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double x = points[i].nu / kTwoPi;
        if (x >= 1.0) x = 0.0;
        out.vertices.push_back(Vertex{static_cast<VertexId>(i), TorusPoint({x}), n * std::exp(-points[i].r / 2.0)});
    }
    return out;
}

HyperbolicPoint unembed(const HyperbolicParams& params, double weight, double position) {
    if (!(weight > 0.0)) throw InvalidInput("unembed: weight must be positive");
    return {2.0 * std::log(static_cast<double>(params.n) / weight), kTwoPi * position};
}

HyperbolicGraph make_hyperbolic_graph(const HyperbolicParams& params, std::vector<HyperbolicPoint> points,
                                      std::vector<std::pair<VertexId, VertexId>> edges) {
    const double n = static_cast<double>(params.n);
    std::vector<double> weights;
    std::vector<double> coords;
    weights.reserve(points.size());
    coords.reserve(points.size());
    for (const auto& p : points) {
        weights.push_back(n * std::exp(-p.r / 2.0));
        double x = p.nu / kTwoPi;
        coords.push_back(x >= 1.0 ? 0.0 : x);
    }
    HyperbolicGraph hg;
    hg.params = params;
    hg.points = std::move(points);
    hg.graph = Graph(induced_params(params), std::move(weights), std::move(coords), std::move(edges));
    return hg;
}

HyperbolicGraph sample_hyperbolic_graph(const HyperbolicParams& params) {
    auto points = sample_hyperbolic_points(params);
    auto edges = hyperbolic_edges(params, points);
    return make_hyperbolic_graph(params, std::move(points), std::move(edges));
}

std::vector<std::pair<VertexId, VertexId>> girg_coordinate_threshold_edges(const HyperbolicParams& params,
                                                                           const Graph& embedded) {
    params.validate();
    if (params.t_h != 0.0) throw InvalidInput("girg_coordinate_threshold_edges requires t_h == 0");
    if (embedded.dimension() != 1) throw InvalidInput("embedded graph must be one-dimensional");
    const double radius = params.radius();
    const double n = static_cast<double>(params.n);
    const double w_min = std::exp(-params.c_h / 2.0);
    const auto count = static_cast<VertexId>(embedded.num_vertices());

    // Weight layers [wmin 2^j, wmin 2^(j+1)), each sorted by position.
    std::vector<std::vector<std::pair<double, VertexId>>> layers;
    for (VertexId v = 0; v < count; ++v) {
        const double ratio = embedded.weight(v) / w_min;
        const auto j = static_cast<std::size_t>(std::max(0.0, std::floor(std::log2(ratio))));
        if (j >= layers.size()) layers.resize(j + 1);
        layers[j].emplace_back(embedded.position(v)[0], v);
    }
    for (auto& layer : layers) std::sort(layer.begin(), layer.end());

    std::vector<HyperbolicPoint> polar(count);
    for (VertexId v = 0; v < count; ++v) polar[v] = unembed(params, embedded.weight(v), embedded.position(v)[0]);

    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId u = 0; u < count; ++u) {
        for (std::size_t j = 0; j < layers.size(); ++j) {
            // Heaviest possible weight in the layer gives the smallest radius.
            const double w_upper = w_min * std::ldexp(1.0, static_cast<int>(j) + 1) * (1.0 + 1e-12);
            const double r_lo = std::max(0.0, 2.0 * std::log(n / w_upper));
            const double half = max_angle(polar[u].r, r_lo, radius) / kTwoPi;
            visit_window(layers[j], embedded.position(u)[0], half, 1.0, [&](VertexId v) {
                if (v > u && hyperbolic_distance(polar[u], polar[v]) <= radius) edges.emplace_back(u, v);
            });
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

double phi_hyperbolic(const HyperbolicGraph& hg, VertexId v, VertexId t) {
    hg.graph.check_vertex(v);
    hg.graph.check_vertex(t);
    if (v == t) throw InvalidInput("phi_hyperbolic: v must differ from the target");
    const double n = static_cast<double>(hg.params.n);
    const double w_t = n * std::exp(-hg.points[t].r / 2.0);
    const double w_min = std::exp(-hg.params.c_h / 2.0);
    return n / (w_t * w_min * std::sqrt(std::cosh(hyperbolic_distance(hg.points[v], hg.points[t]))));
}

} // namespace girgnav
