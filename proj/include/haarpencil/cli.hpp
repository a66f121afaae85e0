#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "haarpencil/content_ratio.hpp"
#include "haarpencil/haar_mc.hpp"
#include "haarpencil/json_io.hpp"
#include "haarpencil/moments.hpp"

namespace haarpencil::cli {

// --- token parsing ------------------------------------------------------
//
// Complex numbers arrive as "re", "re+imi" or "re-imi"; coordinates are
// comma-separated, tuple rows semicolon-separated. In --exact mode the same
// grammar is parsed into Gaussian rationals ("3/10" and "0.3" both work).

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Index of the +/- that separates real and imaginary components, if any.
inline std::size_t imag_split_pos(const std::string& t) {
    if (t.empty() || t.back() != 'i') return std::string::npos;
    for (std::size_t i = t.size() - 1; i > 0; --i) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E')
            return i;
    }
    return std::string::npos;
}

}  // namespace detail

inline Cplx parse_complex_token(const std::string& tok) {
    if (tok.empty()) throw std::invalid_argument("empty complex token");
    try {
        if (tok.back() == 'i') {
            auto pos = detail::imag_split_pos(tok);
            if (pos == std::string::npos) {  // pure imaginary: "0.5i", "i", "-i"
                std::string im = tok.substr(0, tok.size() - 1);
                if (im.empty() || im == "+" || im == "-") im += "1";
                return {0.0, std::stod(im)};
            }
            std::string re = tok.substr(0, pos);
            std::string im = tok.substr(pos, tok.size() - pos - 1);
            if (im == "+" || im == "-") im += "1";
            return {std::stod(re), std::stod(im)};
        }
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return {v, 0.0};
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed complex token '" + tok + "'");
    }
}

inline RatComplex parse_rat_complex_token(const std::string& tok) {
    if (tok.empty()) throw std::invalid_argument("empty rational token");
    if (tok.back() == 'i') {
        auto pos = detail::imag_split_pos(tok);
        if (pos == std::string::npos) {
            std::string im = tok.substr(0, tok.size() - 1);
            if (im.empty() || im == "+") im = "1";
            else if (im == "-") im = "-1";
            return {Rat(0), rat_from_string(im)};
        }
        std::string re = tok.substr(0, pos);
        std::string im = tok.substr(pos, tok.size() - pos - 1);
        if (im == "+") im = "1";
        else if (im == "-") im = "-1";
        return {rat_from_string(re), rat_from_string(im)};
    }
    return {rat_from_string(tok), Rat(0)};
}

inline ScalarTuple parse_complex_list(const std::string& s) {
    ScalarTuple out;
    for (const auto& tok : detail::split(s, ',')) out.push_back(parse_complex_token(tok));
    return out;
}

inline RatScalarTuple parse_rat_complex_list(const std::string& s) {
    RatScalarTuple out;
    for (const auto& tok : detail::split(s, ',')) out.push_back(parse_rat_complex_token(tok));
    return out;
}

inline std::vector<ScalarTuple> parse_tuple_rows(const std::string& s) {
    std::vector<ScalarTuple> out;
    for (const auto& row : detail::split(s, ';')) out.push_back(parse_complex_list(row));
    return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : detail::split(s, ','))
        out.push_back(std::stoi(tok));
    return out;
}

inline std::string format_float12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CommandResult {
    std::string command;
    json inputs;
    json output;
    long elapsed_ms = 0;

    json to_json() const {
        return json{{"command", command},
                    {"inputs", inputs},
                    {"output", output},
                    {"elapsed_ms", elapsed_ms}};
    }
};

namespace detail {

inline MatrixTuple load_tuple(const json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("matrices file: missing key '") + key + "'");
    return matrix_tuple_from_json(j.at(key));
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace detail

/// Front door used by main() and by the in-process CLI tests.
/// Exit codes: 0 success, 2 domain error, 3 parse error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"moments of determinants of random unitary pencils"};
    app.require_subcommand(1);

    // exact-scalar
    auto* sc_exact = app.add_subcommand("exact-scalar", "finite-d scalar-coefficient moment");
    int es_d = 1, es_g = 0;
    std::string es_x, es_y;
    bool es_exact = false;
    sc_exact->add_option("--d", es_d, "unitary size d")->required();
    sc_exact->add_option("--g", es_g, "number of coordinates (checked against --x)");
    sc_exact->add_option("--x", es_x, "coefficients, e.g. 0.3,0.4")->required();
    sc_exact->add_option("--y", es_y, "second tuple (defaults to --x)");
    sc_exact->add_flag("--exact", es_exact, "exact rational arithmetic");

    // exact-moment
    auto* sc_ident = app.add_subcommand("exact-moment", "finite-d identity-coefficient moment");
    int im_d = 1, im_k = 1, im_g = 0;
    std::string im_x;
    bool im_exact = false;
    std::optional<int> im_nmax;
    sc_ident->add_option("--d", im_d)->required();
    sc_ident->add_option("--k", im_k)->required();
    sc_ident->add_option("--g", im_g);
    sc_ident->add_option("--x", im_x)->required();
    sc_ident->add_option("--nmax", im_nmax, "truncation degree (certified tail bound attached)");
    sc_ident->add_flag("--exact", im_exact);

    // limit
    auto* sc_limit = app.add_subcommand("limit", "large-d limit (scalar or matrix tuples)");
    std::string li_x, li_y, li_file;
    sc_limit->add_option("--x", li_x);
    sc_limit->add_option("--y", li_y);
    sc_limit->add_option("--matrices", li_file, "JSON file with keys X and Y");

    // diagonal-limit
    auto* sc_diag = app.add_subcommand("diagonal-limit", "product-kernel limit for diagonal tuples");
    std::string dl_xs, dl_ys;
    sc_diag->add_option("--xs", dl_xs, "rows a,b;c,d")->required();
    sc_diag->add_option("--ys", dl_ys, "rows (defaults to --xs)");

    // mc
    auto* sc_mc = app.add_subcommand("mc", "Monte Carlo pencil-moment estimate");
    int mc_d = 1, mc_k = 1, mc_g = 0, mc_threads = 0;
    long mc_samples = 0, mc_chunk = kDefaultChunkSize;
    std::uint64_t mc_seed = 0;
    std::string mc_x, mc_y, mc_file;
    sc_mc->add_option("--d", mc_d)->required();
    sc_mc->add_option("--k", mc_k);
    sc_mc->add_option("--g", mc_g);
    sc_mc->add_option("--x", mc_x);
    sc_mc->add_option("--y", mc_y);
    sc_mc->add_option("--matrices", mc_file, "JSON file with keys X and Y");
    sc_mc->add_option("--samples", mc_samples)->required();
    sc_mc->add_option("--seed", mc_seed)->required();
    sc_mc->add_option("--chunk", mc_chunk);
    sc_mc->add_option("--threads", mc_threads, "worker count (scheduling only)");

    // orthogonality
    auto* sc_orth = app.add_subcommand("orthogonality", "Monte Carlo trace-pair integral");
    std::string or_sigma, or_tau, or_alpha;
    int or_d = 1, or_threads = 0;
    long or_samples = 0, or_chunk = kDefaultChunkSize;
    std::uint64_t or_seed = 0;
    sc_orth->add_option("--sigma", or_sigma, "cycle notation, e.g. \"(1 2)\"")->required();
    sc_orth->add_option("--tau", or_tau, "cycle notation (defaults to --sigma)");
    sc_orth->add_option("--alpha", or_alpha, "multi-index, e.g. 2,0")->required();
    sc_orth->add_option("--d", or_d)->required();
    sc_orth->add_option("--samples", or_samples)->required();
    sc_orth->add_option("--seed", or_seed)->required();
    sc_orth->add_option("--chunk", or_chunk);
    sc_orth->add_option("--threads", or_threads);

    // verify-bounds
    auto* sc_verify = app.add_subcommand("verify-bounds", "content-ratio bound sweep");
    int vb_n = 1, vb_k = 1, vb_d = 1, vb_g = 2;
    bool vb_csv = false;
    sc_verify->add_option("--n", vb_n)->required();
    sc_verify->add_option("--k", vb_k)->required();
    sc_verify->add_option("--d", vb_d)->required();
    sc_verify->add_option("--g", vb_g, "also check the g-fold chain bound when > 2");
    sc_verify->add_flag("--csv", vb_csv);

    // max-ratio
    auto* sc_max = app.add_subcommand("max-ratio", "exhaustive content-ratio maximum");
    std::string mr_lambda;
    int mr_d = 1;
    sc_max->add_option("--lambda", mr_lambda, "partition, e.g. 4,4,3")->required();
    sc_max->add_option("--d", mr_d)->required();

    // conic
    auto* sc_conic = app.add_subcommand("conic", "Szego-type sweep for conic pencils");
    std::string co_x0 = "1", co_x;
    int co_k = 1, co_dmin = 1, co_dmax = 20, co_dstep = 1;
    double co_eps = 1e-9;
    bool co_csv = false;
    sc_conic->add_option("--x0", co_x0)->required();
    sc_conic->add_option("--x", co_x)->required();
    sc_conic->add_option("--k", co_k);
    sc_conic->add_option("--d-min", co_dmin);
    sc_conic->add_option("--d-max", co_dmax);
    sc_conic->add_option("--d-step", co_dstep);
    sc_conic->add_option("--eps", co_eps, "tail certification target");
    sc_conic->add_flag("--csv", co_csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    const auto t0 = std::chrono::steady_clock::now();
    CommandResult result;
    bool raw_output = false;  // csv modes bypass the JSON envelope
    std::string raw;

    try {
        if (*sc_exact) {
            result.command = "exact-scalar";
            MomentValue mv;
            if (es_exact) {
                auto x = parse_rat_complex_list(es_x);
                auto y = es_y.empty() ? x : parse_rat_complex_list(es_y);
                if (es_g > 0 && es_g != static_cast<int>(x.size()))
                    throw std::invalid_argument("--g does not match the length of --x");
                mv = exact_scalar_moment(es_d, x, y);
            } else {
                auto x = parse_complex_list(es_x);
                auto y = es_y.empty() ? x : parse_complex_list(es_y);
                if (es_g > 0 && es_g != static_cast<int>(x.size()))
                    throw std::invalid_argument("--g does not match the length of --x");
                mv = exact_scalar_moment(es_d, x, y);
            }
            result.inputs = {{"d", es_d}, {"x", es_x}, {"y", es_y.empty() ? es_x : es_y},
                             {"exact", es_exact}};
            result.output = moment_value_to_json(mv);
        } else if (*sc_ident) {
            result.command = "exact-moment";
            MomentValue mv;
            if (im_exact) {
                auto x = parse_rat_complex_list(im_x);
                if (im_g > 0 && im_g != static_cast<int>(x.size()))
                    throw std::invalid_argument("--g does not match the length of --x");
                mv = exact_identity_moment(im_d, im_k, x, im_nmax);
            } else {
                auto x = parse_complex_list(im_x);
                if (im_g > 0 && im_g != static_cast<int>(x.size()))
                    throw std::invalid_argument("--g does not match the length of --x");
                mv = exact_identity_moment(im_d, im_k, x, im_nmax);
            }
            result.inputs = {{"d", im_d}, {"k", im_k}, {"x", im_x}, {"exact", im_exact}};
            if (im_nmax) result.inputs["nmax"] = *im_nmax;
            result.output = moment_value_to_json(mv);
        } else if (*sc_limit) {
            result.command = "limit";
            Cplx v;
            if (!li_file.empty()) {
                json j = detail::load_json_file(li_file);
                MatrixTuple X = detail::load_tuple(j, "X");
                MatrixTuple Y = j.contains("Y") ? detail::load_tuple(j, "Y") : X;
                v = matrix_limit(X, Y);
                result.inputs = {{"matrices", li_file}};
            } else {
                if (li_x.empty()) throw std::invalid_argument("limit: need --x or --matrices");
                auto x = parse_complex_list(li_x);
                auto y = li_y.empty() ? x : parse_complex_list(li_y);
                v = scalar_limit(x, y);
                result.inputs = {{"x", li_x}, {"y", li_y.empty() ? li_x : li_y}};
            }
            result.output = {{"float", round12(v.real())}};
            if (v.imag() != 0.0) result.output["float_imag"] = round12(v.imag());
        } else if (*sc_diag) {
            result.command = "diagonal-limit";
            auto xs = parse_tuple_rows(dl_xs);
            auto ys = dl_ys.empty() ? xs : parse_tuple_rows(dl_ys);
            Cplx v = diagonal_limit(xs, ys);
            result.inputs = {{"xs", dl_xs}, {"ys", dl_ys.empty() ? dl_xs : dl_ys}};
            result.output = {{"float", round12(v.real())}};
            if (v.imag() != 0.0) result.output["float_imag"] = round12(v.imag());
        } else if (*sc_mc) {
            result.command = "mc";
            std::optional<MatrixTuple> X, Y;
            if (!mc_file.empty()) {
                json j = detail::load_json_file(mc_file);
                X = detail::load_tuple(j, "X");
                Y = j.contains("Y") ? detail::load_tuple(j, "Y") : X;
                result.inputs = {{"matrices", mc_file}};
            } else {
                if (mc_x.empty()) throw std::invalid_argument("mc: need --x or --matrices");
                auto x = parse_complex_list(mc_x);
                auto y = mc_y.empty() ? x : parse_complex_list(mc_y);
                if (mc_g > 0 && mc_g != static_cast<int>(x.size()))
                    throw std::invalid_argument("--g does not match the length of --x");
                X = MatrixTuple::scalar_identity(x, mc_k);
                Y = MatrixTuple::scalar_identity(y, mc_k);
                result.inputs = {{"x", mc_x}, {"y", mc_y.empty() ? mc_x : mc_y}, {"k", mc_k}};
            }
            auto est = estimate_moment(*X, *Y, mc_d, mc_samples, mc_seed, mc_chunk, mc_threads);
            result.inputs["d"] = mc_d;
            result.inputs["samples"] = mc_samples;
            result.inputs["seed"] = mc_seed;
            result.inputs["chunk"] = mc_chunk;
            result.output = moment_estimate_to_json(est);
        } else if (*sc_orth) {
            result.command = "orthogonality";
            MultiIndex alpha{parse_int_list(or_alpha)};
            const int n = alpha.weight();
            Permutation sigma = Permutation::from_cycles(or_sigma, n);
            Permutation tau = or_tau.empty() ? sigma : Permutation::from_cycles(or_tau, n);
            auto est = estimate_trace_pair(sigma, tau, alpha, or_d, or_samples, or_seed,
                                           or_chunk, or_threads);
            auto os = orbit_stabilizer(sigma, alpha);
            bool in_orbit = false;
            for (const auto& p : os.orbit)
                if (p == tau) { in_orbit = true; break; }
            result.inputs = {{"sigma", or_sigma}, {"tau", or_tau.empty() ? or_sigma : or_tau},
                             {"alpha", alpha.entries}, {"d", or_d},
                             {"samples", or_samples}, {"seed", or_seed}};
            result.output = moment_estimate_to_json(est);
            result.output["large_d_limit"] = in_orbit ? static_cast<double>(os.stabilizer_size) : 0.0;
        } else if (*sc_verify) {
            result.command = "verify-bounds";
            auto reports = verify_bound(vb_n, vb_k, vb_d);
            bool all_ok = true;
            for (const auto& r : reports) all_ok = all_ok && r.satisfies;
            if (vb_csv) {
                raw_output = true;
                std::ostringstream csv;
                csv << "lambda;mu;nu;d;ratio_num;ratio_den;bound;ok\n";
                for (const auto& r : reports) {
                    Rat q = r.ratio;
                    q.canonicalize();
                    csv << partition_to_json(r.lambda).dump() << ';'
                        << partition_to_json(r.mu).dump() << ';'
                        << partition_to_json(r.nu).dump() << ';' << r.d << ';'
                        << q.get_num().get_str() << ';' << q.get_den().get_str() << ';'
                        << r.bound.get_str() << ';' << (r.satisfies ? "true" : "false") << '\n';
                }
                raw = csv.str();
            } else {
                json rows = json::array();
                for (const auto& r : reports) rows.push_back(ratio_report_to_json(r));
                result.output = {{"all_ok", all_ok}, {"count", reports.size()}, {"reports", rows}};
            }
            if (vb_g > 2) {
                bool chains_ok = true;
                for (const auto& r : verify_chain_bound(vb_n, vb_k, vb_d, vb_g))
                    chains_ok = chains_ok && r.satisfies;
                if (!raw_output) result.output["chain_ok"] = chains_ok;
            }
            result.inputs = {{"n", vb_n}, {"k", vb_k}, {"d", vb_d}, {"g", vb_g}};
        } else if (*sc_max) {
            result.command = "max-ratio";
            Partition lam{parse_int_list(mr_lambda)};
            auto rep = max_ratio_search(lam, mr_d);
            result.inputs = {{"lambda", lam.parts()}, {"d", mr_d}};
            result.output = ratio_report_to_json(rep);
        } else if (*sc_conic) {
            result.command = "conic";
            Cplx x0 = parse_complex_token(co_x0);
            auto x = parse_complex_list(co_x);
            auto cc = conic_constants(x0, x, co_k);
            ScalarTuple xt;
            for (Cplx v : x) xt.push_back(v / x0);
            double r2 = 0.0;
            for (Cplx v : xt) r2 += std::norm(v);
            json rows = json::array();
            std::ostringstream csv;
            csv << "d;log_moment_minus_dk_c0;target_k2_c1\n";
            for (int d = co_dmin; d <= co_dmax; d += co_dstep) {
                double lm;
                if (co_k == 1) {
                    lm = std::log(exact_scalar_moment(d, xt, xt).value.real());
                } else {
                    int nmax = std::min<long>(identity_moment_certified_nmax(co_k, r2, co_eps),
                                              static_cast<long>(co_k) * d);
                    auto mv = exact_identity_moment(d, co_k, xt, nmax);
                    lm = std::log(mv.value.real());
                }
                rows.push_back(json{{"d", d}, {"log_moment_minus_dk_c0", round12(lm)},
                                    {"target_k2_c1", round12(co_k * co_k * cc.c1)}});
                csv << d << ';' << format_float12(lm) << ';'
                    << format_float12(co_k * co_k * cc.c1) << '\n';
            }
            result.inputs = {{"x0", co_x0}, {"x", co_x}, {"k", co_k}};
            if (co_csv) {
                raw_output = true;
                raw = csv.str();
            } else {
                result.output = {{"c0", round12(cc.c0)}, {"c1", round12(cc.c1)}, {"rows", rows}};
            }
        }
    } catch (const std::domain_error& e) {
        err << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }

    const auto t1 = std::chrono::steady_clock::now();
    result.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    if (raw_output)
        out << raw;
    else
        out << result.to_json().dump(2) << "\n";
    return 0;
}

}  // namespace haarpencil::cli
