// tmom: checks and constructions for truncated moment problems and
// positivity certificates. Subcommands print one JSON report object per line
// to stdout and a human summary to stderr; exit code 0 means pass, 1 a
// negative verdict, 2 an input error.

#include <complex>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmom/moments.hpp"
#include "tmom/opcheck.hpp"
#include "tmom/serialize.hpp"
#include "tmom/sos.hpp"

using namespace tmom;

namespace {

struct Reporter {
    std::string command;
    Json inputs = Json::object();
    int exit_code = 0;

    void digest(const std::string& label, const std::string& path) { inputs[label] = file_digest(path); }

    void emit(const std::string& verdict, Json payload) {
        payload["command"] = command;
        payload["verdict"] = verdict;
        payload["inputs"] = inputs;
        std::cout << payload.dump() << "\n";
        std::cerr << command << ": " << verdict;
        if (payload.contains("detail")) std::cerr << " (" << payload["detail"].get<std::string>() << ")";
        std::cerr << "\n";
    }

    void pass(Json payload = Json::object()) { emit("pass", std::move(payload)); }
    void fail(Json payload = Json::object()) {
        exit_code = std::max(exit_code, 1);
        emit("fail", std::move(payload));
    }
    void error(const std::string& message) {
        exit_code = 2;
        emit("error", Json{{"detail", message}});
    }
};

Json complex_json(Coeff c) { return Json::array({c.real(), c.imag()}); }

std::vector<MonomialIndex> indices_from_json(const Json& j) {
    std::vector<MonomialIndex> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw SchemaError("index must be [m, n]");
        out.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return out;
}

// maximal-by-greed section: indices whose pairwise kernel sums stay inside
// the truncation
std::vector<MonomialIndex> auto_section(const MomentData& data) {
    std::vector<MonomialIndex> chosen;
    for (const auto& [s, c] : data.values) {
        bool ok = data.values.count(s + involute(s)) != 0;
        for (const auto& t : chosen)
            ok = ok && data.values.count(s + involute(t)) && data.values.count(t + involute(s));
        if (ok) chosen.push_back(s);
    }
    return chosen;
}

std::vector<std::vector<int>> auto_trig_section(const MomentData& data) {
    std::vector<std::vector<int>> chosen;
    const int kappa = data.semigroup.kappa();
    for (const auto& [a, c] : data.trig_values) {
        bool ok = true;
        for (const auto& b : chosen) {
            std::vector<int> d1(kappa), d2(kappa);
            for (int i = 0; i < kappa; ++i) {
                d1[i] = a[i] - b[i];
                d2[i] = b[i] - a[i];
            }
            ok = ok && data.trig_values.count(d1) && data.trig_values.count(d2);
        }
        if (ok) chosen.push_back(a);
    }
    return chosen;
}

Json index_json(MonomialIndex s) { return Json::array({s.m, s.n}); }

int run_moments_check(const std::string& data_file, const std::string& sections_spec, double tol) {
    Reporter rep{"moments check"};
    rep.digest("data", data_file);
    try {
        MomentData data = moment_data_from_json(load_json_file(data_file));
        MomentData sym;
        try {
            sym = symmetrize(data);
        } catch (const NotSymmetrizable& e) {
            rep.fail(Json{{"detail", e.what()}});
            return rep.exit_code;
        }

        if (sym.is_trig()) {
            std::vector<std::vector<std::vector<int>>> sections;
            if (sections_spec.empty()) {
                sections.push_back(auto_trig_section(sym));
            } else {
                for (const auto& sec : Json::parse(sections_spec)) {
                    std::vector<std::vector<int>> f;
                    for (const auto& a : sec) f.push_back(a.get<std::vector<int>>());
                    sections.push_back(std::move(f));
                }
            }
            for (const auto& f : sections) {
                const PsdVerdict v = kernel_psd_check(sym, f, tol);
                Json payload{{"section_size", f.size()}, {"min_eigenvalue", v.min_eigenvalue}};
                v.psd ? rep.pass(std::move(payload)) : rep.fail(std::move(payload));
            }
        } else {
            std::vector<std::vector<MonomialIndex>> sections;
            if (sections_spec.empty()) {
                sections.push_back(auto_section(sym));
            } else {
                for (const auto& sec : Json::parse(sections_spec)) sections.push_back(indices_from_json(sec));
            }
            for (const auto& f : sections) {
                const PsdVerdict v = kernel_psd_check(sym, f, KernelMode::NPlus, tol);
                Json findex = Json::array();
                for (const auto& s : f) findex.push_back(index_json(s));
                Json payload{{"section", findex}, {"min_eigenvalue", v.min_eigenvalue}};
                v.psd ? rep.pass(std::move(payload)) : rep.fail(std::move(payload));
            }
        }
    } catch (const Json::exception& e) {
        rep.error(e.what());
    } catch (const MissingMoment& e) {
        rep.error(e.what());
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_certify(const std::string& data_file, const std::string& cert_file, double tol) {
    Reporter rep{"certify"};
    rep.digest("data", data_file);
    rep.digest("certificate", cert_file);
    try {
        const MomentData data = moment_data_from_json(load_json_file(data_file));
        const AnySquares squares = squares_from_json(load_json_file(cert_file));
        CertVerdict v;
        if (const auto* laurent = std::get_if<SquareList>(&squares))
            v = certificate_positivity_check(data, *laurent, tol);
        else
            v = certificate_positivity_check(data, std::get<TrigSquareList>(squares), tol);
        Json payload{{"lambda", complex_json(v.lambda_value)}};
        v.pass ? rep.pass(std::move(payload)) : rep.fail(std::move(payload));
    } catch (const CertificateOutOfCone& e) {
        rep.error(e.what());
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_construct(const std::string& kind, const std::string& params_file, const std::string& out_file) {
    Reporter rep{"construct " + kind};
    rep.digest("params", params_file);
    try {
        const Json params = load_json_file(params_file);
        if (kind == "havi") {
            const Measure nu = measure_from_json(params.at("nu"));
            const auto* atomic = std::get_if<AtomicMeasure>(&nu);
            if (!atomic) throw SchemaError("havi construction needs an atomic measure");
            const int k = params.at("k").get<int>();
            const HaviPair pair = havi_construct(*atomic, k);

            double worst = 0.0;
            for (int m = k; m <= k + 3; ++m)
                for (int n = k; n <= k + 3; ++n) {
                    const Coeff lhs = havi_riesz(pair, LaurentPoly::monomial(m, n));
                    const Coeff rhs =
                        measure_moment(pair.mu, {m, n}) + ((m == k && n == k) ? pair.a : 0.0);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            if (!out_file.empty())
                save_json_file(out_file,
                               Json{{"mu", measure_to_json(pair.mu)}, {"a", pair.a}, {"k", pair.k}});
            rep.pass(Json{{"a", pair.a}, {"k", pair.k}, {"max_deviation", worst}});
        } else if (kind == "lambda2new") {
            std::vector<std::pair<double, double>> nu;
            for (const auto& e : params.at("nu")) nu.push_back({e[0].get<double>(), e[1].get<double>()});
            const Coeff c_kl{params.at("c_kl")[0].get<double>(), params.at("c_kl")[1].get<double>()};
            const int k = params.at("k").get<int>();
            const int l = params.at("l").get<int>();
            const RayMeasure measure = lambda2new_construct(nu, c_kl, k, l);

            double worst = 0.0;
            for (int m = 0; m <= 8; ++m) {
                double expect = 0.0;
                for (const auto& [rho, w] : nu) expect += w * std::pow(rho, 2 * m);
                worst = std::max(worst, std::abs(measure_moment(Measure{measure}, {m, m}) - expect));
            }
            worst = std::max(worst, std::abs(measure_moment(Measure{measure}, {k, l}) - c_kl));
            if (!out_file.empty()) save_json_file(out_file, measure_to_json(Measure{measure}));
            rep.pass(Json{{"rays", measure.rays.size()}, {"max_deviation", worst}});
        } else {
            rep.error("unknown construction " + kind);
        }
    } catch (const InequalityViolated& e) {
        rep.fail(Json{{"detail", e.what()}});
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_transform(const std::string& direction, const std::string& in_file, int degree,
                  const std::string& out_file) {
    Reporter rep{"transform " + direction};
    rep.digest("input", in_file);
    try {
        const CoefficientSystem in = system_from_json(load_json_file(in_file));
        const CoefficientSystem out = direction == "real2complex" ? real_to_complex_moments(in, degree)
                                                                  : complex_to_real_moments(in, degree);
        if (!out_file.empty()) save_json_file(out_file, system_to_json(out));
        rep.pass(Json{{"degree", degree}, {"entries", out.values().size()}});
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_fejer_riesz(const std::string& in_file, double tol, const std::string& out_file) {
    Reporter rep{"sos fejer-riesz"};
    rep.digest("input", in_file);
    try {
        const TrigPoly p = trig_from_json(load_json_file(in_file));
        const TrigPoly q = fejer_riesz(p, tol);
        double worst = 0.0;
        int deg = 0;
        for (const auto& [a, c] : p.terms()) deg = std::max(deg, std::abs(a[0]));
        const int grid = std::max(64, 8 * deg + 16);
        for (int i = 0; i < grid; ++i) {
            const std::vector<Coeff> z{std::polar(1.0, 2.0 * std::numbers::pi * i / grid)};
            worst = std::max(worst, std::abs(std::norm(eval(q, z)) - eval(p, z).real()));
        }
        if (!out_file.empty()) save_json_file(out_file, trig_to_json(q));
        rep.pass(Json{{"sup_error", worst}});
    } catch (const NotNonnegativeOnCircle& e) {
        rep.fail(Json{{"detail", e.what()}});
    } catch (const DegreeZeroNegative& e) {
        rep.fail(Json{{"detail", e.what()}});
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_decompose(const std::string& target_file, const std::string& basis_spec, int max_iter,
                  double psd_tol, const std::string& out_file) {
    Reporter rep{"sos decompose"};
    rep.digest("target", target_file);
    try {
        const LaurentPoly target = poly_from_json(load_json_file(target_file));
        const std::vector<MonomialIndex> basis = indices_from_json(Json::parse(basis_spec));
        double tol = psd_tol;
        if (tol <= 0.0) {
            Matrix probe(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
            tol = default_psd_tol(probe);
        }
        const FeasibilityReport report = sos_feasibility(target, basis, max_iter, tol);
        if (report.kind == FeasibilityReport::Kind::Certificate && !out_file.empty())
            save_json_file(out_file, gram_to_json(report.certificate));
        Json payload = feasibility_to_json(report);
        if (report.kind == FeasibilityReport::Kind::Certificate)
            rep.pass(std::move(payload));
        else
            rep.fail(std::move(payload));
    } catch (const BasisCannotExpress& e) {
        rep.error(e.what());
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_witness(double lre, double lim, double eps, const std::string& out_file) {
    Reporter rep{"sos witness"};
    try {
        const Coeff lambda{lre, lim};
        const LaurentPoly w = sumk_witness(lambda, eps);
        if (!out_file.empty()) save_json_file(out_file, poly_to_json(w));
        rep.pass(Json{{"value_at_lambda", complex_json(eval(w, lambda))}});
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_diffset_test(const std::string& set_spec, int bound) {
    Reporter rep{"diffset test"};
    try {
        std::vector<std::vector<int>> t;
        for (const auto& e : Json::parse(set_spec)) {
            if (e.is_number_integer())
                t.push_back({e.get<int>()});  // allow flat lists for dimension 1
            else
                t.push_back(e.get<std::vector<int>>());
        }
        const auto witness = is_difference_set(t, bound);
        if (witness) {
            rep.pass(Json{{"lambda", *witness}});
        } else {
            rep.fail(Json{{"detail", "no witness within bound"}, {"bound", bound}});
        }
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_diffset_quadrant(int depth) {
    Reporter rep{"diffset quadrant"};
    try {
        const auto lambda = quadrant_lambda(depth);
        // verify: differences meet the box [-depth, depth]^2 in exactly the
        // two closed quadrants
        std::set<std::array<int, 2>> diffs;
        for (const auto& a : lambda)
            for (const auto& b : lambda) diffs.insert({a[0] - b[0], a[1] - b[1]});
        bool ok = true;
        for (int x = -depth; x <= depth && ok; ++x)
            for (int y = -depth; y <= depth && ok; ++y) {
                const bool expect = (x >= 0 && y >= 0) || (x <= 0 && y <= 0);
                ok = diffs.count({x, y}) == static_cast<size_t>(expect ? 1 : 0);
            }
        Json points = Json::array();
        for (const auto& p : lambda) points.push_back(Json::array({p[0], p[1]}));
        Json payload{{"lambda", points}, {"box_match", ok}};
        ok ? rep.pass(std::move(payload)) : rep.fail(std::move(payload));
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_dilation_check(const std::string& tuple_file, const std::string& system_file, double tol) {
    Reporter rep{"dilation check"};
    rep.digest("tuple", tuple_file);
    rep.digest("system", system_file);
    try {
        const OperatorTuple tuple = operator_tuple_from_json(load_json_file(tuple_file));
        const OperatorCoefficientSystem sys = operator_system_from_json(load_json_file(system_file));
        const BlockCheckResult v = dilation_block_check(tuple, sys, tol);
        Json payload{{"min_eigenvalue", v.min_eigenvalue}};
        v.pass ? rep.pass(std::move(payload)) : rep.fail(std::move(payload));
    } catch (const NotHermitian& e) {
        rep.error(e.what());
    } catch (const MixedSignMultiIndex& e) {
        rep.error(e.what());
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_subnormal_check(const std::string& matrix_file, const std::string& system_file, double tol) {
    Reporter rep{"subnormal check"};
    rep.digest("matrix", matrix_file);
    rep.digest("system", system_file);
    try {
        const OperatorTuple tuple = operator_tuple_from_json(load_json_file(matrix_file));
        if (tuple.matrices.empty()) throw SchemaError("matrix file holds no matrix");
        const OperatorCoefficientSystem sys = operator_system_from_json(load_json_file(system_file));
        const BlockCheckResult v = subnormal_block_check(tuple.matrices.front(), sys, tol);
        Json payload{{"min_eigenvalue", v.min_eigenvalue}};
        v.pass ? rep.pass(std::move(payload)) : rep.fail(std::move(payload));
    } catch (const NotHermitian& e) {
        rep.error(e.what());
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

int run_gen(const std::string& kind, const Json& params, const std::string& out_file,
            const std::string& witness_file) {
    Reporter rep{"gen " + kind};
    try {
        if (kind == "dziury") {
            const MomentData data = gen_dziury(indices_from_json(params.at("indices")));
            if (!out_file.empty()) save_json_file(out_file, moment_data_to_json(data));
            rep.pass(Json{{"entries", data.values.size()}});
        } else if (kind == "kael") {
            const int k = params.at("k").get<int>();
            const int l = params.at("l").get<int>();
            std::vector<MonomialIndex> truncation;
            if (params.contains("indices")) {
                truncation = indices_from_json(params["indices"]);
            } else {
                for (int m = k; m <= l; ++m)
                    for (int n = k; n <= l; ++n) truncation.push_back({m, n});
            }
            auto [data, note] = gen_kael(k, l, truncation);
            if (!out_file.empty()) save_json_file(out_file, moment_data_to_json(data));
            rep.pass(Json{{"entries", data.values.size()}, {"note", note}});
        } else if (kind == "annulus") {
            const Coeff lambda{params.at("lambda")[0].get<double>(), params.at("lambda")[1].get<double>()};
            const Measure atoms = measure_from_json(params.at("atoms"));
            const auto* atomic = std::get_if<AtomicMeasure>(&atoms);
            if (!atomic) throw SchemaError("annulus generator needs atomic measure");
            const AnnulusData out =
                gen_annulus(lambda, params.at("eps").get<double>(), params.at("j").get<int>(),
                            params.at("k").get<int>(), *atomic);
            if (!out_file.empty()) save_json_file(out_file, moment_data_to_json(out.data));
            if (!witness_file.empty()) save_json_file(witness_file, poly_to_json(out.witness));
            rep.pass(Json{{"riesz_of_witness", complex_json(riesz_apply(out.data, out.witness))}});
        } else {
            rep.error("unknown generator " + kind);
        }
    } catch (const Error& e) {
        rep.error(e.what());
    } catch (const std::exception& e) {
        rep.error(e.what());
    }
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated moment problems and positivity certificates"};
    app.require_subcommand(1);

    double tol = 1e-9;
    double psd_tol = 0.0;  // 0 = module default
    int max_iter = 2000;
    int seed = 0;
    std::string out_file, witness_file, sections, basis, set_spec;
    std::string file_a, file_b;
    int degree = 4, bound = 3, depth = 3;
    double eps = 0.5, lre = 0.0, lim = 0.0;
    std::string params_file;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "scalar comparison tolerance");
        cmd->add_option("--psd-tol", psd_tol, "PSD tolerance (0 = default)");
        cmd->add_option("--seed", seed, "seed for sampled subroutines");
        cmd->add_option("--max-iter", max_iter, "iteration budget");
        cmd->add_option("--out", out_file, "output file");
    };

    auto* moments_cmd = app.add_subcommand("moments", "moment data checks");
    auto* moments_check = moments_cmd->add_subcommand("check", "kernel positivity sections");
    moments_check->add_option("data", file_a, "moment data file")->required();
    moments_check->add_option("--sections", sections, "JSON list of sections");
    add_common(moments_check);

    auto* certify = app.add_subcommand("certify", "Riesz positivity against a square list");
    certify->add_option("data", file_a, "moment data file")->required();
    certify->add_option("certificate", file_b, "square list file")->required();
    add_common(certify);

    auto* construct = app.add_subcommand("construct", "measure constructions");
    std::string construct_kind;
    construct->add_option("kind", construct_kind, "havi | lambda2new")->required();
    construct->add_option("params", params_file, "parameter file")->required();
    add_common(construct);

    auto* transform = app.add_subcommand("transform", "real <-> complex moment transforms");
    std::string direction;
    transform->add_option("direction", direction, "real2complex | complex2real")->required();
    transform->add_option("input", file_a, "coefficient system file")->required();
    transform->add_option("--degree", degree, "triangle degree");
    add_common(transform);

    auto* sos_cmd = app.add_subcommand("sos", "sum-of-squares tools");
    auto* fejer = sos_cmd->add_subcommand("fejer-riesz", "spectral factorization on the circle");
    fejer->add_option("input", file_a, "trig polynomial file")->required();
    add_common(fejer);
    auto* decompose = sos_cmd->add_subcommand("decompose", "Gram feasibility for a target");
    decompose->add_option("target", file_a, "polynomial file")->required();
    decompose->add_option("--basis", basis, "JSON list of [m,n]")->required();
    add_common(decompose);
    auto* witness = sos_cmd->add_subcommand("witness", "disc negativity witness");
    witness->add_option("--lambda-re", lre, "center, real part");
    witness->add_option("--lambda-im", lim, "center, imaginary part");
    witness->add_option("--eps", eps, "disc radius")->required();
    add_common(witness);

    auto* diffset = app.add_subcommand("diffset", "difference-set tools");
    auto* diffset_test = diffset->add_subcommand("test", "search for a difference-set witness");
    diffset_test->add_option("--set", set_spec, "JSON list of indices")->required();
    diffset_test->add_option("--bound", bound, "search box bound");
    add_common(diffset_test);
    auto* diffset_quadrant = diffset->add_subcommand("quadrant", "two-quadrant staircase witness");
    diffset_quadrant->add_option("--depth", depth, "staircase depth");
    add_common(diffset_quadrant);

    auto* dilation = app.add_subcommand("dilation", "unitary power dilation checks");
    auto* dilation_check = dilation->add_subcommand("check", "block certificate check");
    dilation_check->add_option("tuple", file_a, "operator tuple file")->required();
    dilation_check->add_option("system", file_b, "coefficient system file")->required();
    add_common(dilation_check);

    auto* subnormal = app.add_subcommand("subnormal", "subnormality checks");
    auto* subnormal_check = subnormal->add_subcommand("check", "block certificate check");
    subnormal_check->add_option("matrix", file_a, "matrix file (operator tuple, first entry)")->required();
    subnormal_check->add_option("system", file_b, "coefficient system file")->required();
    add_common(subnormal_check);

    auto* gen = app.add_subcommand("gen", "counterexample generators");
    std::string gen_kind, gen_params;
    gen->add_option("kind", gen_kind, "dziury | kael | annulus")->required();
    gen->add_option("--params", gen_params, "inline JSON parameters")->required();
    gen->add_option("--witness-out", witness_file, "witness polynomial output file");
    add_common(gen);

    CLI11_PARSE(app, argc, argv);

    try {
        if (moments_check->parsed()) return run_moments_check(file_a, sections, tol);
        if (certify->parsed()) return run_certify(file_a, file_b, tol);
        if (construct->parsed()) return run_construct(construct_kind, params_file, out_file);
        if (transform->parsed()) return run_transform(direction, file_a, degree, out_file);
        if (fejer->parsed()) return run_fejer_riesz(file_a, tol, out_file);
        if (decompose->parsed()) return run_decompose(file_a, basis, max_iter, psd_tol, out_file);
        if (witness->parsed()) return run_witness(lre, lim, eps, out_file);
        if (diffset_test->parsed()) return run_diffset_test(set_spec, bound);
        if (diffset_quadrant->parsed()) return run_diffset_quadrant(depth);
        if (dilation_check->parsed()) return run_dilation_check(file_a, file_b, tol);
        if (subnormal_check->parsed()) return run_subnormal_check(file_a, file_b, tol);
        if (gen->parsed()) return run_gen(gen_kind, Json::parse(gen_params), out_file, witness_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
