#include "integra/cli/workbench.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "integra/dell/dell.hpp"
#include "integra/errors.hpp"
#include "integra/exact/registry.hpp"
#include "integra/macdonald/macdonald.hpp"
#include "integra/qoper/qoper.hpp"
#include "integra/trs/duality.hpp"
#include "integra/vertex/vertex.hpp"

namespace integra::cli {

std::complex<double> parse_complex(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto number = [&](const std::string& x) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(x, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != x.size()) throw std::invalid_argument("not a complex number: " + s);
        return v;
    };
    if (t.empty()) throw std::invalid_argument("empty complex number");
    if (t.back() != 'i') return {number(t), 0.0};
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < t.size(); ++i)
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
    std::string re = split == std::string::npos ? "" : t.substr(0, split);
    std::string im = split == std::string::npos ? t : t.substr(split);
    double imv = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : number(im);
    return {re.empty() ? 0.0 : number(re), imv};
}

std::vector<std::complex<double>> parse_complex_list(const std::string& s) {
    std::vector<std::complex<double>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    return out;
}

namespace {

void strip_wall_time(Json& j) {
    if (j.is_object()) {
        j.erase("wall_time");
        for (auto& [k, v] : j.items()) strip_wall_time(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_wall_time(v);
    }
}

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

Json cjson(const VectorC& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cjson(v[i]));
    return a;
}

VectorC to_vector(const std::vector<cplx>& v) {
    VectorC out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

// Generic point: one value per ray, moduli in [0.5, 2.5], and q off the unit circle.
struct GenericPoint {
    VectorC xi, a;
    cplx q;
};

GenericPoint random_point(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), r(0.3, 0.9);
    auto vec = [&] {
        VectorC v(n);
        for (int i = 0; i < n; ++i) v[i] = cplx(1.5 + u(rng), u(rng)) * std::polar(1.0, 2.0 * i);
        return v;
    };
    GenericPoint g;
    g.xi = vec();
    g.a = vec();
    g.q = std::polar(r(rng), u(rng));
    return g;
}

struct Options {
    std::string json_out, manifest;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int n = 2;
    int rank = 1;
    int cap = 4;
    int p_order = 1, w_order = 1;
    std::string coupling = "t";
    std::string xi, a, q;
    std::string lambda;
    std::string frame = "electric";
    std::string side = "left";
    std::string theta = "full";
    bool mirror = false;
};

GenericPoint point_from(const Options& o, int n, Json& params) {
    GenericPoint g;
    if (o.xi.empty() && o.a.empty() && o.q.empty()) {
        g = random_point(o.seed, n);
    } else {
        if (o.xi.empty() || o.a.empty() || o.q.empty()) throw CLI::ValidationError("--xi, --a and --q go together");
        auto xi = parse_complex_list(o.xi), a = parse_complex_list(o.a);
        if (static_cast<int>(xi.size()) != n || static_cast<int>(a.size()) != n)
            throw CLI::ValidationError("--xi and --a need " + std::to_string(n) + " entries");
        g.xi = to_vector(xi);
        g.a = to_vector(a);
        g.q = parse_complex(o.q);
    }
    params["xi"] = cjson(g.xi);
    params["a"] = cjson(g.a);
    params["q"] = cjson(g.q);
    return g;
}

struct Outcome {
    Json result;
    bool pass = true;
};

Outcome trs_commute(const Options& o, Json& params) {
    params["n"] = o.n;
    params["coupling"] = o.coupling;
    TRSFrame frame = magnetic_frame(o.n, o.coupling);
    std::vector<ShiftOperator<RationalFunction>> h;
    for (int k = 1; k <= o.n; ++k) h.push_back(trs_hamiltonian(frame, k));
    Json pairs = Json::array();
    bool all = true;
    for (int k = 1; k <= o.n; ++k)
        for (int l = k + 1; l <= o.n; ++l) {
            bool zero = commutator(h[k - 1], h[l - 1]).is_zero();
            all = all && zero;
            pairs.push_back(Json{{"k", k}, {"l", l}, {"zero", zero}});
        }
    return {Json{{"pairs_checked", pairs.size()}, {"all_zero", all}, {"pairs", pairs}}, all};
}

Json duality_json(const DualityResult& r) {
    Json sols = Json::array(), res = Json::array();
    for (const auto& s : r.solutions) {
        sols.push_back(Json{{"momenta", cjson(s.point.momenta)}});
        res.push_back(s.residual);
    }
    return Json{{"count", r.solutions.size()}, {"expected", r.expected}, {"solutions", sols}, {"residuals", res}};
}

Outcome trs_duality(const Options& o, Json& params) {
    params["n"] = o.n;
    params["mirror"] = o.mirror;
    GenericPoint g = point_from(o, o.n, params);
    DualityOptions opt;
    opt.tol = o.tol;
    opt.seed = o.seed;
    DualityResult r = duality_solve(g.xi, g.a, g.q, opt);
    Json out = duality_json(r);
    out["max_residual"] = r.max_residual();
    out["tol"] = o.tol;
    bool pass = r.complete() && r.max_residual() < o.tol;
    if (o.mirror) {
        MirrorReport m = mirror_check(r, g.a, g.xi, g.q, opt);
        out["mirror"] = Json{{"count", m.electric.solutions.size()},
                             {"counts_match", m.counts_match},
                             {"max_residual", m.electric.max_residual()},
                             {"involution_error", m.involution_error},
                             {"tol", opt.dedup},
                             {"pass", m.pass}};
        pass = pass && m.pass;
    }
    out["pass"] = pass;
    return {out, pass};
}

Outcome qoper_verify_cmd(const Options& o, Json& params) {
    const int n = o.rank + 1;
    params["rank"] = o.rank;
    GenericPoint g = point_from(o, n, params);
    DualityOptions opt;
    opt.tol = o.tol;
    opt.seed = o.seed;
    DualityResult r = duality_solve(g.xi, g.a, g.q, opt);
    const double d_tol = 1e-9, qq_tol = 1e-10, bethe_tol = 1e-9;
    std::vector<cplx> xi(g.xi.data(), g.xi.data() + n), a(g.a.data(), g.a.data() + n);
    Json reports = Json::array();
    bool pass = r.complete();
    for (const auto& s : r.solutions) {
        std::vector<cplx> p(s.point.momenta.data(), s.point.momenta.data() + n);
        QOperReport rep = qoper_verify(oper_from_momenta(xi, a, p, g.q));
        Json beta = Json::array();
        for (auto b : rep.beta) beta.push_back(cjson(b));
        bool ok = rep.pass(d_tol, qq_tol, bethe_tol);
        pass = pass && ok;
        reports.push_back(Json{{"momenta", cjson(s.point.momenta)},
                               {"D_check", rep.d_check},
                               {"QQ_residuals", rep.qq_residuals},
                               {"Bethe_residuals", rep.bethe_residuals},
                               {"beta_constants", beta},
                               {"pass", ok}});
    }
    Json out{{"count", r.solutions.size()},
             {"expected", r.expected},
             {"tol", Json{{"duality", o.tol}, {"D", d_tol}, {"QQ", qq_tol}, {"Bethe", bethe_tol}}},
             {"solutions", reports},
             {"pass", pass}};
    return {out, pass};
}

Outcome macdonald_cmd(const Options& o, Json& params) {
    Partition lambda = parse_partition(o.lambda, o.n);
    params["lambda"] = partition_str(lambda);
    params["n"] = o.n;
    SymmetricPolynomial p = macdonald_oracle(lambda, o.n);
    Json coeffs = Json::object();
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) coeffs[partition_str(it->first)] = to_json(it->second);
    EigenReport rep = eigencheck(lambda, o.n);
    Json eig = Json::array();
    for (const auto& e : rep.entries)
        eig.push_back(Json{{"k", e.k}, {"eigenvalue", to_json(e.eigenvalue)}, {"exact", e.exact}, {"normalization", to_json(e.normalization)}});
    bool pass = rep.all_exact() && rep.top_is_q_power;
    return {Json{{"basis", "monomial"},
                 {"coeffs", coeffs},
                 {"eigenvalues", eig},
                 {"scale", to_json(rep.scale)},
                 {"top_is_q_power", rep.top_is_q_power},
                 {"pass", pass}},
            pass};
}

Outcome vertex_cmd(const Options& o, Json& params) {
    params["n"] = o.n;
    params["cap"] = o.cap;
    if (o.lambda.empty()) {
        VertexSpec spec{FlagFixedPoint::reversed(o.n), std::vector<int>(o.n - 1, o.cap)};
        TruncatedSeries v = vertex_coefficients(spec);
        return {Json{{"fixed_point", spec.fp.str()}, {"convention", "inverted_block2"}, {"series", to_json(v)}}, true};
    }
    Partition lambda = parse_partition(o.lambda, o.n);
    params["lambda"] = partition_str(lambda);
    TruncationReport r = truncation_check(lambda, o.n, o.cap);
    return {Json{{"fixed_point", FlagFixedPoint::reversed(o.n).str()},
                 {"terminated", r.terminated},
                 {"max_degree", r.max_degree},
                 {"polynomial", r.polynomial},
                 {"symmetric", r.symmetric},
                 {"matches_oracle", r.matches_oracle},
                 {"constant", to_json(r.constant)},
                 {"failure", r.failure},
                 {"pass", r.pass()}},
            r.pass()};
}

Outcome vertex_eigen_cmd(const Options& o, Json& params) {
    params["n"] = o.n;
    params["cap"] = o.cap;
    params["frame"] = o.frame;
    auto opt = o.frame == "magnetic" ? EigenResidualOptions::magnetic_default() : EigenResidualOptions::electric_default();
    EigenResidualReport r = eigen_residual(o.n, o.cap, opt);
    Json resp = Json::array(), consts = Json::array(), zero = Json::array(), fail = Json::array();
    for (const auto& x : r.responses) resp.push_back(to_json(x));
    for (const auto& x : r.constants) consts.push_back(to_json(x));
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        zero.push_back(r.residuals[i].is_zero());
        fail.push_back(r.first_failure[i] ? Json(*r.first_failure[i]) : Json(nullptr));
    }
    return {Json{{"sigma", r.sigma},
                 {"cocycle", r.cocycle},
                 {"responses", resp},
                 {"constants", consts},
                 {"residual_zero", zero},
                 {"first_failure", fail},
                 {"pass", r.pass()}},
            r.pass()};
}

Outcome dell_certify(const Options& o, Json& params) {
    params["n"] = o.n;
    params["p_order"] = o.p_order;
    params["w_order"] = o.w_order;
    params["side"] = o.side;
    params["theta"] = o.theta;
    DELLModel m{o.n, o.p_order, o.w_order};
    m.theta = o.theta == "drop-inverse" ? ThetaForm::DropInverse : ThetaForm::Full;
    auto t0 = std::chrono::steady_clock::now();
    auto cert = dell_commutativity_certificate(m, o.side == "right" ? InverseSide::Right : InverseSide::Left);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Json pairs = Json::array();
    std::vector<std::vector<int>> failing;
    for (const auto& p : cert.pairs) {
        pairs.push_back(Json{{"a", p.a}, {"b", p.b}, {"zero", p.pass()}, {"failing_orders", p.failing_orders}});
        failing.insert(failing.end(), p.failing_orders.begin(), p.failing_orders.end());
    }
    // Largest box [0,P'] x [0,W'] free of failures, by P'+W' then P'.
    int bp = -1, bw = -1;
    for (int pp = 0; pp <= o.p_order; ++pp)
        for (int ww = 0; ww <= o.w_order; ++ww) {
            bool clean = true;
            for (const auto& f : failing)
                if (f[0] <= pp && f[1] <= ww) clean = false;
            if (clean && (pp + ww > bp + bw || (pp + ww == bp + bw && pp > bp))) {
                bp = pp;
                bw = ww;
            }
        }
    Json out{{"pairs", pairs},
             {"clipped", cert.clipped},
             {"first_failure", cert.first_failure ? Json(*cert.first_failure) : Json(nullptr)},
             {"max_verified_order", bp < 0 ? Json(nullptr) : Json{{"p", bp}, {"w", bw}}},
             {"pass", cert.pass()},
             {"wall_time", wall}};
    return {out, cert.pass()};
}

Json steps_json(const std::vector<DegenerationStep>& steps) {
    Json a = Json::array();
    for (const auto& s : steps) {
        Json u = Json::array();
        for (const auto& x : s.u) u.push_back(to_json(x));
        a.push_back(Json{{"index", s.a}, {"factor", to_json(s.factor)}, {"momentum_rescaling", u}, {"pass", s.pass}, {"failure", s.failure}});
    }
    return a;
}

Outcome dell_degenerate(const Options& o, Json& params) {
    params["n"] = o.n;
    params["p_order"] = o.p_order;
    params["w_order"] = o.w_order;
    DegenerationReport r = degeneration_check(o.n, o.p_order, o.w_order);
    return {Json{{"dell_to_ers", steps_json(r.dell_to_ers)}, {"ers_to_trs", steps_json(r.ers_to_trs)}, {"pass", r.pass()}}, r.pass()};
}

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
    if (dynamic_cast<const DegenerateInput*>(&e)) return "DegenerateInput";
    if (dynamic_cast<const NotDivisible*>(&e)) return "NotDivisible";
    if (dynamic_cast<const NotInvertible*>(&e)) return "NotInvertible";
    if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
    if (dynamic_cast<const CoordinateMismatch*>(&e)) return "CoordinateMismatch";
    if (dynamic_cast<const std::out_of_range*>(&e)) return "OutOfRange";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "InvalidArgument";
    return "Error";
}

} // namespace

std::string result_digest(const Json& result) {
    Json j = result;
    strip_wall_time(j);
    std::string s = j.dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

RunResult execute(const std::vector<std::string>& args, std::ostream& err) {
    Options o;
    CLI::App app{"Exact symbolic-numeric workbench for tRS, q-opers, Macdonald, vertex and DELL checks", "workbench"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--json-out", o.json_out, "Write the JSON result here instead of standard output");
    app.add_option("--manifest", o.manifest, "Manifest path (default <json-out>.manifest.json)");
    app.add_option("--seed", o.seed, "Seed for random generic points and multi-starts");
    app.add_option("--tol", o.tol, "Residual tolerance for numeric checks")->check(CLI::PositiveNumber);

    auto* trs = app.add_subcommand("trs", "Ruijsenaars-Schneider operators")->require_subcommand(1)->fallthrough();
    auto* commute = trs->add_subcommand("commute", "Exact commutators of all H_k")->fallthrough();
    commute->add_option("--n", o.n, "Particles")->check(CLI::Range(1, 6));
    commute->add_option("--coupling", o.coupling, "Coupling variable name");
    auto* duality = trs->add_subcommand("duality", "Solve the classical duality system")->fallthrough();
    duality->add_option("--n", o.n, "Particles")->check(CLI::Range(1, 4));
    duality->add_option("--xi", o.xi, "Comma-separated complex twists");
    duality->add_option("--a", o.a, "Comma-separated complex equivariant parameters");
    duality->add_option("--q", o.q, "Complex shift parameter");
    duality->add_flag("--mirror", o.mirror, "Also run the mirror comparison");

    auto* qoper = app.add_subcommand("qoper", "q-oper and QQ checks")->require_subcommand(1)->fallthrough();
    auto* verify = qoper->add_subcommand("verify", "Verify the oper pipeline on every duality solution")->fallthrough();
    verify->add_option("--rank", o.rank, "Rank r (r+1 sites)")->check(CLI::Range(1, 3));
    verify->add_option("--xi", o.xi, "Comma-separated complex twists");
    verify->add_option("--a", o.a, "Comma-separated complex equivariant parameters");
    verify->add_option("--q", o.q, "Complex shift parameter");

    auto* mac = app.add_subcommand("macdonald", "Macdonald polynomial and its eigenvalues")->fallthrough();
    mac->add_option("--lambda", o.lambda, "Partition, e.g. 2,1")->required();
    mac->add_option("--n", o.n, "Variables")->check(CLI::Range(1, 4));

    auto* vertex = app.add_subcommand("vertex", "Vertex series, truncation and eigen residuals")->require_subcommand(0, 1)->fallthrough();
    vertex->add_option("--n", o.n, "Sites")->check(CLI::Range(1, 4));
    vertex->add_option("--cap", o.cap, "Degree cap per node")->check(CLI::Range(0, 12));
    vertex->add_option("--lambda", o.lambda, "Truncate at the locus of this partition");
    auto* eig = vertex->add_subcommand("eigencheck", "Order-by-order eigen residual")->fallthrough();
    eig->add_option("--frame", o.frame, "electric or magnetic")->check(CLI::IsMember({"electric", "magnetic"}));

    auto* dell = app.add_subcommand("dell", "Elliptic tier")->require_subcommand(1)->fallthrough();
    auto* certify = dell->add_subcommand("certify", "Order-by-order commutativity of the DELL Hamiltonians")->fallthrough();
    certify->add_option("--n", o.n, "Particles")->check(CLI::Range(2, 4));
    certify->add_option("--p-order", o.p_order, "Cap in p")->check(CLI::Range(0, 4));
    certify->add_option("--w-order", o.w_order, "Cap in w")->check(CLI::Range(0, 4));
    certify->add_option("--side", o.side, "Where O_0^{-1} acts")->check(CLI::IsMember({"left", "right"}));
    certify->add_option("--theta", o.theta, "Theta variant")->check(CLI::IsMember({"full", "drop-inverse"}));
    auto* degenerate = dell->add_subcommand("degenerate", "DELL to eRS to tRS degeneration")->fallthrough();
    degenerate->add_option("--n", o.n, "Particles")->check(CLI::Range(2, 4));
    degenerate->add_option("--p-order", o.p_order, "Cap in p")->check(CLI::Range(0, 4));
    degenerate->add_option("--w-order", o.w_order, "Cap in w")->check(CLI::Range(0, 4));

    RunResult rr;
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return rr;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        rr.code = UsageError;
        return rr;
    }

    std::string sub;
    Json params = Json::object();
    auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome oc;
        if (trs->parsed()) {
            sub = commute->parsed() ? "trs commute" : "trs duality";
            if (!commute->parsed() && !duality->count("--n")) o.n = o.xi.empty() ? o.n : static_cast<int>(parse_complex_list(o.xi).size());
            oc = commute->parsed() ? trs_commute(o, params) : trs_duality(o, params);
        } else if (qoper->parsed()) {
            sub = "qoper verify";
            if (!verify->count("--rank") && !o.xi.empty()) o.rank = static_cast<int>(parse_complex_list(o.xi).size()) - 1;
            oc = qoper_verify_cmd(o, params);
        } else if (mac->parsed()) {
            sub = "macdonald";
            if (!mac->count("--n")) o.n = std::max(1, static_cast<int>(std::count(o.lambda.begin(), o.lambda.end(), ',')) + 1);
            oc = macdonald_cmd(o, params);
        } else if (vertex->parsed()) {
            sub = eig->parsed() ? "vertex eigencheck" : "vertex";
            oc = eig->parsed() ? vertex_eigen_cmd(o, params) : vertex_cmd(o, params);
        } else {
            sub = certify->parsed() ? "dell certify" : "dell degenerate";
            if (degenerate->parsed() && !degenerate->count("--w-order")) o.w_order = 0;
            oc = certify->parsed() ? dell_certify(o, params) : dell_degenerate(o, params);
        }
        rr.output = Json{{"subcommand", sub}, {"parameters", params}, {"result", oc.result}};
        rr.code = oc.pass ? Pass : CheckFailed;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        rr.code = UsageError;
        return rr;
    } catch (const std::exception& e) {
        rr.output = Json{{"subcommand", sub},
                         {"parameters", params},
                         {"error", Json{{"type", error_type(e)}, {"message", e.what()}}}};
        rr.code = CheckFailed;
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rr.manifest = Json{{"subcommand", sub},
                       {"parameters", params},
                       {"seed", o.seed},
                       {"tol", o.tol},
                       {"tool_version", tool_version},
                       {"wall_time", wall},
                       {"result_digest", result_digest(rr.output)}};
    if (!o.json_out.empty()) rr.manifest["json_out"] = o.json_out;
    if (!o.manifest.empty()) rr.manifest["manifest"] = o.manifest;
    return rr;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunResult r = execute(args, err);
    if (r.code == UsageError || r.output.is_null()) return r.code;
    std::string text = r.output.dump(2) + "\n";
    std::string json_out = r.manifest.value("json_out", std::string());
    std::string manifest = r.manifest.value("manifest", json_out.empty() ? std::string() : json_out + ".manifest.json");
    if (json_out.empty()) {
        out << text;
    } else {
        std::ofstream f(json_out);
        if (!f) {
            err << "error: cannot write " << json_out << "\n";
            return UsageError;
        }
        f << text;
    }
    if (!manifest.empty()) {
        std::ofstream f(manifest);
        if (!f) {
            err << "error: cannot write " << manifest << "\n";
            return UsageError;
        }
        f << r.manifest.dump(2) << "\n";
    }
    return r.code;
}

} // namespace integra::cli
