#include <girgnav/graph_io.hpp>

#include <girgnav/error.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace girgnav {

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void write_edges(std::ostream& out, const Graph& g) {
    const auto edges = g.edge_list();
    out << "edges " << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw IoError(std::string("unexpected end of file while reading ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_real(const std::string& s, const char* what) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw IoError(std::string("malformed real for ") + what + ": " + s);
    return x;
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw IoError(std::string("malformed integer for ") + what + ": " + s);
    }
    return x;
}

std::map<std::string, std::string> parse_params_line(const std::string& line) {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word != "params") throw IoError("expected params line, got: " + line);
    std::map<std::string, std::string> kv;
    while (ss >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) throw IoError("malformed params entry: " + word);
        kv[word.substr(0, eq)] = word.substr(eq + 1);
    }
    return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw IoError("params line missing " + key);
    return it->second;
}

std::uint64_t parse_count_line(const std::string& line, const std::string& keyword) {
    std::istringstream ss(line);
    std::string word;
    std::string count;
    ss >> word >> count;
    if (word != keyword) throw IoError("expected '" + keyword + " <count>', got: " + line);
    return parse_uint(count, keyword.c_str());
}

std::vector<std::pair<VertexId, VertexId>> read_edges(std::istream& in, std::size_t num_vertices) {
    const std::uint64_t count = parse_count_line(next_line(in, "edge header"), "edges");
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::istringstream ss(next_line(in, "edge"));
        std::string a;
        std::string b;
        ss >> a >> b;
        const auto u = parse_uint(a, "edge endpoint");
        const auto v = parse_uint(b, "edge endpoint");
        if (u >= num_vertices || v >= num_vertices || u >= v) throw IoError("invalid edge " + a + " " + b);
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    return edges;
}

Graph read_graph_body(std::istream& in) {
    const auto kv = parse_params_line(next_line(in, "params"));
    ModelParams p;
    p.n = parse_real(require(kv, "n"), "n");
    p.d = static_cast<int>(parse_uint(require(kv, "d"), "d"));
    p.beta = parse_real(require(kv, "beta"), "beta");
    p.w_min = parse_real(require(kv, "wmin"), "wmin");
    p.alpha = parse_real(require(kv, "alpha"), "alpha");
    p.kernel_c = parse_real(require(kv, "kernel_c"), "kernel_c");
    p.c1 = parse_real(require(kv, "c1"), "c1");
    p.c2 = parse_real(require(kv, "c2"), "c2");
    p.ep3 = parse_uint(require(kv, "ep3"), "ep3") != 0;
    p.seed = parse_uint(require(kv, "seed"), "seed");
    if (p.d < 1) throw IoError("dimension must be positive");

    const std::uint64_t count = parse_count_line(next_line(in, "vertex header"), "vertices");
    std::vector<double> weights(count);
    std::vector<double> coords(count * static_cast<std::size_t>(p.d));
    for (std::uint64_t i = 0; i < count; ++i) {
        std::istringstream ss(next_line(in, "vertex"));
        std::string tok;
        ss >> tok;
        if (parse_uint(tok, "vertex id") != i) throw IoError("vertex ids must be consecutive from 0");
        ss >> tok;
        weights[i] = parse_real(tok, "weight");
        for (int k = 0; k < p.d; ++k) {
            if (!(ss >> tok)) throw IoError("vertex line has too few coordinates");
            const double c = parse_real(tok, "coordinate");
            if (!(c >= 0.0 && c < 1.0)) throw IoError("coordinate outside [0, 1)");
            coords[i * static_cast<std::size_t>(p.d) + static_cast<std::size_t>(k)] = c;
        }
    }
    auto edges = read_edges(in, count);
    try {
        return Graph(p, std::move(weights), std::move(coords), std::move(edges));
    } catch (const InvalidInput& e) {
        throw IoError(e.what());
    }
}

HyperbolicGraph read_hyperbolic_body(std::istream& in) {
    const auto kv = parse_params_line(next_line(in, "params"));
    HyperbolicParams p;
    p.n = parse_uint(require(kv, "n"), "n");
    p.alpha_h = parse_real(require(kv, "alpha_h"), "alpha_h");
    p.c_h = parse_real(require(kv, "c_h"), "c_h");
    p.t_h = parse_real(require(kv, "t_h"), "t_h");
    p.seed = parse_uint(require(kv, "seed"), "seed");

    const std::uint64_t count = parse_count_line(next_line(in, "vertex header"), "vertices");
    std::vector<HyperbolicPoint> points(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::istringstream ss(next_line(in, "vertex"));
        std::string id;
        std::string r;
        std::string nu;
        ss >> id >> r >> nu;
        if (parse_uint(id, "vertex id") != i) throw IoError("vertex ids must be consecutive from 0");
        points[i] = {parse_real(r, "r"), parse_real(nu, "nu")};
    }
    auto edges = read_edges(in, count);
    try {
        return make_hyperbolic_graph(p, std::move(points), std::move(edges));
    } catch (const InvalidInput& e) {
        throw IoError(e.what());
    }
}

} // namespace

void write_graph(std::ostream& out, const Graph& g) {
    const ModelParams& p = g.params();
    out << "girg-graph v1\n";
    out << "params n=" << format_real(p.n) << " d=" << p.d << " beta=" << format_real(p.beta)
        << " wmin=" << format_real(p.w_min) << " alpha=" << format_real(p.alpha)
        << " kernel_c=" << format_real(p.kernel_c) << " c1=" << format_real(p.c1) << " c2=" << format_real(p.c2)
        << " ep3=" << (p.ep3 ? 1 : 0) << " seed=" << p.seed << '\n';
    out << "vertices " << g.num_vertices() << '\n';
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out << v << ' ' << format_real(g.weight(v));
        for (double c : g.position(v)) out << ' ' << format_real(c);
        out << '\n';
    }
    write_edges(out, g);
}

void write_hyperbolic_graph(std::ostream& out, const HyperbolicGraph& hg) {
    const HyperbolicParams& p = hg.params;
    out << "hyperbolic-graph v1\n";
    out << "params n=" << p.n << " alpha_h=" << format_real(p.alpha_h) << " c_h=" << format_real(p.c_h)
        << " t_h=" << format_real(p.t_h) << " seed=" << p.seed << '\n';
    out << "vertices " << hg.points.size() << '\n';
    for (std::size_t v = 0; v < hg.points.size(); ++v) {
        out << v << ' ' << format_real(hg.points[v].r) << ' ' << format_real(hg.points[v].nu) << '\n';
    }
    write_edges(out, hg.graph);
}

Graph read_graph(std::istream& in) {
    if (next_line(in, "header") != "girg-graph v1") throw IoError("not a girg-graph v1 file");
    return read_graph_body(in);
}

HyperbolicGraph read_hyperbolic_graph(std::istream& in) {
    if (next_line(in, "header") != "hyperbolic-graph v1") throw IoError("not a hyperbolic-graph v1 file");
    return read_hyperbolic_body(in);
}

AnyGraph read_any_graph(std::istream& in) {
    const std::string header = next_line(in, "header");
    if (header == "girg-graph v1") return read_graph_body(in);
    if (header == "hyperbolic-graph v1") return read_hyperbolic_body(in);
    throw IoError("unrecognized graph header: " + header);
}

void save_graph(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_graph(out, g);
    if (!out) throw IoError("write failed: " + path.string());
}

void save_hyperbolic_graph(const std::filesystem::path& path, const HyperbolicGraph& hg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_hyperbolic_graph(out, hg);
    if (!out) throw IoError("write failed: " + path.string());
}

AnyGraph load_any_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_any_graph(in);
}

} // namespace girgnav
