#pragma once

#include <girgnav/model.hpp>

#include <initializer_list>
#include <utility>
#include <vector>

namespace testutil {

struct Spec {
    double weight;
    std::vector<double> pos;
};

inline girgnav::Graph build(girgnav::ModelParams params, std::initializer_list<Spec> specs,
                            std::vector<std::pair<girgnav::VertexId, girgnav::VertexId>> edges) {
    std::vector<girgnav::Vertex> vs;
    girgnav::VertexId id = 0;
    for (const Spec& s : specs) vs.push_back({id++, girgnav::TorusPoint(s.pos), s.weight});
    return girgnav::Graph::from_vertices(params, vs, std::move(edges));
}

inline girgnav::ModelParams line_params(double n) {
    girgnav::ModelParams p;
    p.n = n;
    p.d = 1;
    p.w_min = 1.0;
    return p;
}

inline girgnav::ModelParams small_params(double n, std::uint64_t seed, double alpha = girgnav::kInfinity) {
    girgnav::ModelParams p;
    p.n = n;
    p.d = 2;
    p.beta = 2.5;
    p.w_min = 1.0;
    p.alpha = alpha;
    p.seed = seed;
    return p;
}

} // namespace testutil
