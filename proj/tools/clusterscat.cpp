#include "clusterscat/fan.hpp"
#include "clusterscat/scattering.hpp"
#include "clusterscat/separation.hpp"
#include "clusterscat/suites.hpp"
#include "clusterscat/theta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

using namespace cs;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, verify_failed = 1, usage = 2, internal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string in, matrix, walk, m0, point, out, format = "text", suite = "all";
    std::size_t depth = 0;
    long truncation = 8;
    std::uint64_t seed = 1;
    std::size_t budget = 0;
    bool depth_set = false, truncation_set = false;
};

// ---------- input ----------

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = line_col(text, e.byte);
        std::string msg = e.what();
        auto p = msg.find("column ");
        if (p != std::string::npos && (p = msg.find(": ", p)) != std::string::npos) msg = msg.substr(p + 2);
        throw UsageError(source + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg);
    }
}

IntMatrix to_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw UsageError("matrix must be a non-empty array of rows");
    std::size_t n = j.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw UsageError("matrix must be square; row " + std::to_string(i + 1) + " has the wrong length");
        for (std::size_t k = 0; k < n; ++k) {
            if (!j[i][k].is_number_integer()) throw UsageError("matrix entries must be integers");
            m(i, k) = static_cast<long>(j[i][k].get<long long>());
        }
    }
    return m;
}

std::vector<long> to_ints(const json& j, const char* what) {
    if (!j.is_array()) throw UsageError(std::string(what) + " must be an array of integers");
    std::vector<long> v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw UsageError(std::string(what) + " must be an array of integers");
        v.push_back(static_cast<long>(x.get<long long>()));
    }
    return v;
}

Rat to_rat(const json& x) {
    if (x.is_number_integer()) return Rat(static_cast<long>(x.get<long long>()));
    if (x.is_string()) {
        Rat r;
        if (r.set_str(x.get<std::string>(), 10) != 0 || r.get_den() == 0) throw UsageError("bad rational '" + x.get<std::string>() + "'");
        r.canonicalize();
        return r;
    }
    throw UsageError("point coordinates must be integers or strings like \"1/3\"");
}

struct Job {
    ExchangeMatrix B0{IntMatrix{{0}}};
    Walk walk;
    std::size_t depth = 0;
    long truncation = 8;
    std::optional<IntVec> m0;
    std::optional<RatVec> point;
};

// "[1,2]" and "1,2" are both accepted on the command line
json flag_json(const std::string& s, const char* flag) {
    std::string t = s;
    if (t.empty() || t.front() != '[') t = "[" + t + "]";
    return parse_json(t, std::string("--") + flag);
}

Job load(const Options& o) {
    json doc = json::object();
    if (o.matrix.empty()) {
        std::string text, source;
        if (!o.in.empty() && o.in != "-") {
            std::ifstream f(o.in);
            if (!f) throw UsageError("cannot open " + o.in);
            text.assign(std::istreambuf_iterator<char>(f), {});
            source = o.in;
        } else {
            text.assign(std::istreambuf_iterator<char>(std::cin), {});
            source = "<stdin>";
        }
        doc = parse_json(text, source);
        if (!doc.is_object()) throw UsageError(source + ": expected an object with fields matrix, walk, depth, truncation");
    }
    if (!o.matrix.empty()) doc["matrix"] = parse_json(o.matrix, "--matrix");
    if (!o.walk.empty()) doc["walk"] = flag_json(o.walk, "walk");
    if (!o.m0.empty()) doc["m0"] = flag_json(o.m0, "m0");
    if (!o.point.empty()) {
        json p = json::array();
        std::stringstream ss(o.point);
        for (std::string part; std::getline(ss, part, ',');) p.push_back(part);
        doc["point"] = p;
    }
    if (o.depth_set) doc["depth"] = o.depth;
    if (o.truncation_set) doc["truncation"] = o.truncation;
    if (!doc.contains("matrix")) throw UsageError("no matrix given (use --matrix, --in or stdin)");

    Job job;
    IntMatrix m = to_matrix(doc["matrix"]);
    try {
        job.B0 = ExchangeMatrix(m);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::size_t n = m.rows();
    if (doc.contains("walk")) {
        std::vector<std::size_t> dirs;
        for (long k : to_ints(doc["walk"], "walk")) {
            if (k < 1 || static_cast<std::size_t>(k) > n)
                throw UsageError("walk direction " + std::to_string(k) + " out of range 1.." + std::to_string(n));
            dirs.push_back(static_cast<std::size_t>(k - 1));
        }
        job.walk = Walk(dirs);
        if (job.walk.reduced_on_construction()) {
            std::cerr << "warning: walk reduces to [";
            for (std::size_t i = 0; i < job.walk.size(); ++i) std::cerr << (i ? "," : "") << job.walk.dirs()[i] + 1;
            std::cerr << "]\n";
        }
    }
    if (doc.contains("depth")) {
        if (!doc["depth"].is_number_unsigned()) throw UsageError("depth must be a nonnegative integer");
        job.depth = doc["depth"].get<std::size_t>();
    }
    if (doc.contains("truncation")) {
        if (!doc["truncation"].is_number_integer() || doc["truncation"].get<long long>() < 0) throw UsageError("truncation must be a nonnegative integer");
        job.truncation = static_cast<long>(doc["truncation"].get<long long>());
    }
    if (doc.contains("m0")) {
        auto v = to_ints(doc["m0"], "m0");
        if (v.size() != n) throw UsageError("m0 must have " + std::to_string(n) + " entries");
        job.m0 = IntVec(v.begin(), v.end());
    }
    if (doc.contains("point")) {
        if (!doc["point"].is_array() || doc["point"].size() != n) throw UsageError("point must have " + std::to_string(n) + " coordinates");
        RatVec p;
        for (const auto& x : doc["point"]) p.push_back(to_rat(x));
        job.point = p;
    }
    return job;
}

// ---------- output helpers ----------

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_si());
        rows.push_back(r);
    }
    return rows;
}

json vec_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

std::string walk_str(const Walk& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w.dirs()[i] + 1);
    return s + "]";
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << text;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (o.format == a) return;
    throw UsageError("format '" + o.format + "' is not available for this command");
}

// ---------- svg ----------

// Fixed contract: viewBox 0 0 400 400, origin at (200,200), first axis to the right, second axis up.
struct Svg {
    std::ostringstream body;

    static std::pair<double, double> at(const IntVec& v, double r) {
        double x = v[0].get_d(), y = v[1].get_d(), len = std::hypot(x, y);
        return {200 + r * x / len, 200 - r * y / len};
    }
    void ray(const IntVec& v, bool dashed, const std::string& color) {
        auto [x, y] = at(v, 180);
        body << "  <line x1=\"200\" y1=\"200\" x2=\"" << x << "\" y2=\"" << y << "\" stroke=\"" << color
             << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }
    void label(const IntVec& v, double r, const std::string& text, int size = 10) {
        auto [x, y] = at(v, r);
        body << "  <text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
             << "\" font-family=\"monospace\" text-anchor=\"middle\">" << escape(text) << "</text>\n";
    }
    void wedge(const IntVec& a, const IntVec& b, const std::string& fill) {
        auto [x1, y1] = at(a, 170);
        auto [x2, y2] = at(b, 170);
        body << "  <path d=\"M200,200 L" << x1 << "," << y1 << " A170,170 0 0,0 " << x2 << "," << y2
             << " Z\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
    }
    static std::string escape(const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '<') r += "&lt;";
            else if (c == '>') r += "&gt;";
            else if (c == '&') r += "&amp;";
            else r += c;
        }
        return r;
    }
    std::string str(const std::string& title) const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
           << "  <title>" << escape(title) << "</title>\n"
           << "  <rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\"/>\n"
           << body.str() << "</svg>\n";
        return os.str();
    }
};

// ---------- commands ----------

int cmd_walk(const Options& o) {
    require_format(o, {"text", "json"});
    Job job = load(o);
    PatternPoint p = evaluate_walk(job.B0, job.walk);
    std::size_t n = p.n();
    std::vector<int> signs;
    for (std::size_t i = 0; i < n; ++i) signs.push_back(tropical_sign(p, i));
    if (o.format == "json") {
        json j;
        j["matrix"] = matrix_json(job.B0.b());
        j["walk"] = json::array();
        for (auto d : job.walk.dirs()) j["walk"].push_back(d + 1);
        j["B_t"] = matrix_json(p.Bt.b());
        j["C_t"] = matrix_json(p.C);
        j["G_t"] = matrix_json(p.G);
        j["tropical_signs"] = signs;
        j["F"] = json::array();
        j["x"] = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            j["F"].push_back(p.F[i].str("y"));
            j["x"].push_back(x_variable(p, i).str("x"));
        }
        emit(o, j.dump(2) + "\n");
        return ok;
    }
    std::ostringstream os;
    os << "B0   = " << job.B0.b().str() << "\n"
       << "walk = " << walk_str(job.walk) << "\n"
       << "B_t  = " << p.Bt.b().str() << "\n"
       << "C_t  = " << p.C.str() << "\n"
       << "G_t  = " << p.G.str() << "\n"
       << "tropical signs = (";
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << (signs[i] > 0 ? "+" : "-");
    os << ")\n";
    for (std::size_t i = 0; i < n; ++i) os << "F_" << i + 1 << " = " << p.F[i].str("y") << "\n";
    for (std::size_t i = 0; i < n; ++i) os << "x_" << i + 1 << " = " << x_variable(p, i).str("x") << "\n";
    emit(o, os.str());
    return ok;
}

int cmd_fan(const Options& o) {
    require_format(o, {"text", "json", "svg"});
    Job job = load(o);
    std::size_t depth = job.depth ? job.depth : 10;
    std::size_t n = job.B0.n();
    GFan f = build_g_fan(job.B0, depth);
    std::optional<Report> vr;
    if (n <= 4) vr = verify_fan(f);
    if (o.format == "svg") {
        if (n != 2) {
            std::ostringstream os;
            os << "cones: " << f.cones.size() << "\ncomplete: " << (f.complete ? "yes" : "no") << "\n";
            std::cout << os.str();
            throw UsageError("fan rendering needs rank 2 (rank is " + std::to_string(n) + ")");
        }
        Svg svg;
        const char* fills[] = {"#dbe9f6", "#f6e3db", "#e2f0d9", "#efe0f3"};
        std::size_t idx = 0;
        for (const auto& G : f.cones) {
            IntVec a = G.column(0), b = G.column(1);
            if (angle_compare(a, b) > 0) std::swap(a, b);
            // the wedge runs counterclockwise from a to b; a cone never spans more than a half-plane
            if (sign(Int(a[0] * b[1] - a[1] * b[0])) < 0) std::swap(a, b);
            svg.wedge(a, b, fills[idx++ % 4]);
            IntVec mid = add(a, b);
            svg.label(mid, 95, G.str(), 8);
        }
        for (const auto& r : f.rays()) {
            svg.ray(r, false, "black");
            svg.label(r, 192, vec_str(r));
        }
        emit(o, svg.str("g-vector fan of " + job.B0.b().str()));
        return ok;
    }
    if (o.format == "json") {
        json j;
        j["matrix"] = matrix_json(job.B0.b());
        j["depth"] = depth;
        j["cones"] = json::array();
        for (std::size_t t = 0; t < f.cones.size(); ++t)
            j["cones"].push_back({{"G", matrix_json(f.cones[t])}, {"walk", json::parse(walk_str(f.walks[t]))}});
        j["rays"] = json::array();
        for (const auto& r : f.rays()) j["rays"].push_back(vec_json(r));
        j["closed"] = f.closed;
        j["complete"] = f.complete;
        if (vr) j["verified"] = vr->ok();
        emit(o, j.dump(2) + "\n");
        return ok;
    }
    std::ostringstream os;
    os << "B0: " << job.B0.b().str() << "\ndepth: " << depth << "\ncones: " << f.cones.size() << "\nrays: " << f.rays().size()
       << "\nclosed: " << (f.closed ? "yes" : "no") << "\ncomplete: " << (f.complete ? "yes" : "no") << "\n";
    if (vr) os << "verify_fan: " << (vr->ok() ? "pass" : "FAIL") << " (" << vr->checks << " checks)\n";
    for (std::size_t t = 0; t < f.cones.size(); ++t) os << "  " << walk_str(f.walks[t]) << "  G = " << f.cones[t].str() << "\n";
    os << "rays:";
    for (const auto& r : f.rays()) os << " " << vec_str(r);
    os << "\n";
    emit(o, os.str());
    return ok;
}

ScatteringDiagram scatter_diagram(const Job& job) {
    if (job.B0.n() != 2) throw UsageError("scattering completion needs rank 2");
    try {
        require_nonsingular(job.B0);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return normalize(complete_rank2(job.B0, job.truncation), job.truncation);
}

std::string function_str(const WallFunction& f) {
    Laurent p = Laurent::constant(f.n0.size(), 1);
    for (std::size_t j = 0; j < f.coeffs.size(); ++j)
        if (sgn(f.coeffs[j]) != 0) p += mono(scale(Int(static_cast<long>(j + 1)), f.n0), f.coeffs[j]);
    return p.str("yhat");
}

int cmd_scatter(const Options& o) {
    require_format(o, {"text", "json", "svg"});
    Job job = load(o);
    ScatteringDiagram D = scatter_diagram(job);
    if (o.format == "svg") {
        Svg svg;
        for (const auto& w : D.walls)
            for (const auto& v : w.support) {
                svg.ray(v, !w.incoming, w.incoming ? "black" : "#b03030");
                svg.label(v, 150, function_str(w.f), 8);
            }
        emit(o, svg.str("scattering diagram of " + job.B0.b().str() + " up to degree " + std::to_string(job.truncation)));
        return ok;
    }
    if (o.format == "json") {
        json j;
        j["matrix"] = matrix_json(job.B0.b());
        j["truncation"] = job.truncation;
        j["walls"] = json::array();
        for (const auto& w : D.walls) {
            json s = json::array();
            for (const auto& v : w.support) s.push_back(vec_json(v));
            j["walls"].push_back({{"support", s}, {"normal", vec_json(w.f.n0)}, {"function", function_str(w.f)}, {"incoming", w.incoming}});
        }
        j["consistent"] = check_consistency_rank2(D, job.truncation);
        emit(o, j.dump(2) + "\n");
        return ok;
    }
    std::ostringstream os;
    os << "B0: " << job.B0.b().str() << "\ntruncation: " << job.truncation << "\nwalls: " << D.walls.size() << "\n";
    for (const auto& w : D.walls) {
        os << "  ";
        for (std::size_t i = 0; i < w.support.size(); ++i) os << (i ? "+" : "") << "ray" << vec_str(w.support[i]);
        os << "  n0=" << vec_str(w.f.n0) << "  " << (w.incoming ? "incoming" : "outgoing") << "  f = " << function_str(w.f) << "\n";
    }
    os << "consistent: " << (check_consistency_rank2(D, job.truncation) ? "yes" : "no") << "\n";
    emit(o, os.str());
    return ok;
}

int cmd_theta(const Options& o) {
    require_format(o, {"text", "json"});
    Job job = load(o);
    if (!job.m0) throw UsageError("theta needs --m0");
    RatVec Q = job.point ? *job.point : RatVec{Rat(31, 3), Rat(72, 7)};
    ScatteringDiagram D = scatter_diagram(job);
    ThetaResult t;
    try {
        t = theta(D, *job.m0, Q, job.truncation);
    } catch (const NonGenericError& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (o.format == "json") {
        json j;
        j["matrix"] = matrix_json(job.B0.b());
        j["m0"] = vec_json(*job.m0);
        j["point"] = json::array();
        for (const auto& x : t.Q) j["point"].push_back(x.get_str());
        j["perturbations"] = t.perturbations;
        j["theta"] = t.series.str();
        j["lines"] = json::array();
        for (const auto& l : t.lines) j["lines"].push_back(l.str());
        emit(o, j.dump(2) + "\n");
        return ok;
    }
    std::ostringstream os;
    os << "B0: " << job.B0.b().str() << "\nm0: " << vec_str(*job.m0) << "\nQ: " << rat_str(t.Q);
    if (t.perturbations) os << " (perturbed " << t.perturbations << "x)";
    os << "\ntruncation: " << job.truncation << "\ntheta = " << t.series.str() << "\nbroken lines: " << t.lines.size() << "\n";
    for (const auto& l : t.lines) os << "  " << l.str() << "\n";
    emit(o, os.str());
    return ok;
}

int cmd_verify(const Options& o) {
    require_format(o, {"text", "json"});
    SuiteOptions so;
    so.seed = o.seed;
    so.budget = o.budget;
    so.ell = o.truncation;
    SuiteResult r;
    try {
        r = run_suite(o.suite, so);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (o.format == "json") {
        json j;
        j["suite"] = r.name;
        j["seed"] = o.seed;
        j["ok"] = r.ok();
        j["identities"] = json::array();
        for (const auto& [name, rep] : r.identities)
            j["identities"].push_back({{"name", name}, {"checks", rep.checks}, {"failures", rep.failures}});
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, r.str());
    }
    return r.ok() ? ok : verify_failed;
}

void common(CLI::App* sub, Options& o, bool input) {
    if (input) {
        sub->add_option("--in", o.in, "JSON input file (default: stdin unless --matrix is given)");
        sub->add_option("--matrix", o.matrix, "exchange matrix, e.g. [[0,-1],[1,0]]");
        sub->add_option("--walk", o.walk, "mutation directions, 1-based, e.g. 1,2,1");
        sub->add_option("--depth", o.depth, "exploration depth")->each([&](const std::string&) { o.depth_set = true; });
    }
    sub->add_option("--truncation", o.truncation, "yhat-degree truncation (default 8)")
        ->each([&](const std::string&) { o.truncation_set = true; })
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--format", o.format, "text, json or svg")->check(CLI::IsMember({"text", "json", "svg"}));
    sub->add_option("--out", o.out, "output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clusterscat: cluster patterns, g-vector fans, scattering diagrams and theta functions"};
    app.require_subcommand(1);
    Options o;
    auto* walk = app.add_subcommand("walk", "B_t, C_t, G_t, F-polynomials and cluster variables at the end of a walk");
    common(walk, o, true);
    auto* fan = app.add_subcommand("fan", "g-vector fan up to a depth; SVG in rank 2");
    common(fan, o, true);
    auto* scatter = app.add_subcommand("scatter", "consistent rank-2 scattering diagram up to the truncation");
    common(scatter, o, true);
    auto* th = app.add_subcommand("theta", "theta function by broken lines (rank 2)");
    common(th, o, true);
    th->add_option("--m0", o.m0, "initial exponent, e.g. 1,-1");
    th->add_option("--point", o.point, "endpoint Q, e.g. 1/3,1/7");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify, o, false);
    verify->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(suite_names()));
    verify->add_option("--budget", o.budget, "number of random cases (0: suite default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }
    try {
        if (*walk) return cmd_walk(o);
        if (*fan) return cmd_fan(o);
        if (*scatter) return cmd_scatter(o);
        if (*th) return cmd_theta(o);
        return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
}
