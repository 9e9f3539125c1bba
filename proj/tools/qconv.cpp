// qconv: construct, search, certify and sample maximally (dis)entangling
// bipartite gates built as coherifications of permutation tensors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qconv/coherence.hpp"
#include "qconv/coherify.hpp"
#include "qconv/families.hpp"
#include "qconv/invariants.hpp"
#include "qconv/io_json.hpp"
#include "qconv/latin.hpp"
#include "qconv/linalg.hpp"
#include "qconv/metrics.hpp"
#include "qconv/sinkhorn.hpp"
#include "qconv/stats.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace qconv;

namespace {

constexpr const char* kVersion = "qconv 0.1.0";

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct ManifestScope {
    json manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string dir;

    ManifestScope(int argc, char** argv) {
        std::string cmd;
        for (int i = 0; i < argc; ++i) {
            if (i) cmd += ' ';
            cmd += argv[i];
        }
        manifest["command"] = cmd;
        manifest["tool"] = kVersion;
        manifest["inputs"] = json::object();
        manifest["outputs"] = json::array();
    }
    void note_input(const std::string& path) {
        manifest["inputs"][path] = fnv1a(read_file_bytes(path));
    }
    void note_output(const std::string& path) { manifest["outputs"].push_back(path); }
    void note_seed(std::uint64_t seed) { manifest["seed"] = seed; }
    void write(const std::string& directory) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                          start)
                                .count();
        manifest["wall_time_s"] = secs;
        write_json_file((fs::path(directory) / "manifest.json").string(), manifest);
    }
};

json read_json_in(const std::string& path) {
    if (path.empty() || path == "-") {
        json j;
        std::cin >> j;
        return j;
    }
    return read_json_file(path);
}

void write_json_out(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    write_json_file(path, j);
}

ComplexMatrix load_matrix(const std::string& path) { return matrix_from_json(read_json_in(path)); }

json gate_metrics_json(const GateMetrics& gm) {
    json j;
    j["e_p"] = gm.e_p;
    j["g_t"] = gm.g_t;
    j["d_p"] = gm.d_p;
    j["E_choi_U"] = gm.e_choi_u;
    j["E_choi_US"] = gm.e_choi_us;
    j["residual_R"] = gm.residual_r;
    j["residual_Gamma"] = gm.residual_gamma;
    return j;
}

PermutationTensor tensor_from_spec_string(const std::string& text, std::size_t d) {
    if (text == "cyclic") return cyclic_tensor(d);
    return tensor_from_json(read_json_file(text));
}

void print_value_line(const std::string& name, double value) {
    char full[64], rounded[32];
    std::snprintf(full, sizeof(full), "%.17g", value);
    std::snprintf(rounded, sizeof(rounded), "%.6f", value);
    std::cout << name << " = " << full << "  (~" << rounded << ")\n";
}

// ---------------------------------------------------------------- latin ----
int cmd_latin_mols(std::size_t d, const std::string& out) {
    const auto squares = mols(d);
    json arr = json::array();
    for (const auto& s : squares) arr.push_back(latin_to_json(LatinHypercube::from_square(s)));
    json j;
    j["d"] = d;
    j["squares"] = arr;
    write_json_out(out, j);
    return 0;
}

int cmd_latin_hypercubes(std::size_t d, std::size_t arity, std::size_t count,
                         const std::string& out) {
    const auto cubes = latin_hypercubes(d, arity, count);
    json arr = json::array();
    for (const auto& c : cubes) arr.push_back(latin_to_json(c));
    json j;
    j["d"] = d;
    j["arity"] = arity;
    j["cubes"] = arr;
    write_json_out(out, j);
    return 0;
}

// ------------------------------------------------------------- coherify ----
int cmd_coherify_build(const std::string& tensor_path, const std::string& bases_path,
                       const std::string& out) {
    const auto a = tensor_from_json(read_json_in(tensor_path));
    const auto b = bases_from_json(read_json_in(bases_path));
    const auto u = build_unitary(a, b);
    write_json_out(out, matrix_to_json(u));
    return 0;
}

// -------------------------------------------------------------- metrics ----
int cmd_metrics_gate(const std::string& in, bool as_json) {
    const auto u = load_matrix(in);
    const auto gm = gate_metrics(u);
    if (as_json) {
        std::cout << gate_metrics_json(gm).dump(2) << "\n";
    } else {
        print_value_line("e_p", gm.e_p);
        print_value_line("g_t", gm.g_t);
        print_value_line("d_p", gm.d_p);
    }
    return 0;
}

int cmd_metrics_scatter(std::size_t d, std::size_t n, std::uint64_t seed,
                        const std::string& out) {
    const auto a = cyclic_tensor(d);
    std::ostringstream csv;
    csv << "e_p,g_t\n";
    Rng master(seed);
    for (std::size_t i = 0; i < n; ++i) {
        Rng r = master.child(i);
        const auto gm = gate_metrics(build_unitary(a, BasisFamily::random(d, r)));
        char line[80];
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", gm.e_p, gm.g_t);
        csv << line;
    }
    if (out.empty() || out == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream f(out);
        if (!f) throw IoError("cannot open for writing: " + out);
        f << csv.str();
    }
    return 0;
}

// ------------------------------------------------------------ invariant ----
int cmd_invariant_eval(const std::string& in, const std::string& quad_text) {
    const auto u = load_matrix(in);
    const auto quad = PermQuadruple::parse(quad_text);
    const cplx v = local_invariant(u, quad);
    const cplx vn = local_invariant_table_norm(u, quad);
    json j;
    j["re"] = v.real();
    j["im"] = v.imag();
    j["table_norm_re"] = vn.real();
    j["table_norm_im"] = vn.imag();
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ------------------------------------------------------------ coherence ----
int cmd_coherence_range(const std::string& in, double alpha, std::size_t budget,
                        std::uint64_t seed) {
    const auto u = load_matrix(in);
    const auto r = coherence_range_estimate(u, alpha, budget, seed);
    json j;
    j["alpha"] = alpha;
    j["lo_estimate"] = r.lo_estimate;
    j["hi_estimate"] = r.hi_estimate;
    j["probes_used"] = r.probes_used;
    std::cout << j.dump(2) << "\n";
    return 0;
}

// --------------------------------------------------------------- family ----
int cmd_family_u81(const std::string& params_path, std::uint64_t seed, const std::string& out) {
    U81Params p;
    if (!params_path.empty()) {
        const json j = read_json_in(params_path);
        p.a21 = j.at("a21").get<double>();
        p.a22 = j.at("a22").get<double>();
        p.a31 = j.at("a31").get<double>();
        p.a32 = j.at("a32").get<double>();
    } else {
        p = U81Params::random(seed);
    }
    write_json_out(out, matrix_to_json(build_u81(p)));
    return 0;
}

int cmd_family_d6(const std::string& out) {
    write_json_out(out, matrix_to_json(build_d6_candidate()));
    return 0;
}

int cmd_family_p16(bool verify_circuit, const std::string& out) {
    const auto p = build_p16();
    if (verify_circuit) {
        const auto c = circuit_to_unitary(p16_circuit());
        const double diff = c.max_abs_diff(p);
        std::cout << "circuit gates: " << p16_circuit().gate_count()
                  << ", depth: " << p16_circuit().depth() << "\n";
        std::cout << "circuit == matrix: " << (diff == 0.0 ? "PASS" : "FAIL")
                  << " (max entry diff " << diff << ")\n";
        if (diff != 0.0) return 2;
    }
    if (!out.empty()) write_json_out(out, matrix_to_json(p));
    return 0;
}

int cmd_family_u49(std::uint64_t seed, int restarts, const std::string& out) {
    const auto res = u49_ansatz_search(seed, restarts);
    json j = bases_to_json(res.bases);
    j["certificate"] = {{"residual", res.certificate.residual},
                        {"e_p", res.certificate.e_p},
                        {"S2", res.certificate.s2},
                        {"amplitudes_match", res.certificate.amplitudes_match},
                        {"invariant", res.certificate.invariant},
                        {"restarts_used", res.certificate.restarts_used}};
    write_json_out(out, j);
    return 0;
}

// --------------------------------------------------------------- search ----
int cmd_search_run(std::size_t d, const std::string& tensor_spec,
                   const std::string& constraint, int restarts, std::uint64_t seed,
                   std::size_t max_sweeps, const std::string& out_dir, ManifestScope& man) {
    const auto a = tensor_from_spec_string(tensor_spec, d);
    SearchOptions opt;
    opt.constraint = constraint == "cyclic" ? Constraint::Cyclic : Constraint::None;
    opt.max_sweeps = max_sweeps;
    if (!out_dir.empty()) fs::create_directories(out_dir);
    Rng master(seed);
    int successes = 0;
    for (int r = 0; r < restarts; ++r) {
        Rng rr = master.child(r);
        const auto res = search(a, BasisFamily::random(d, rr), opt);
        json j;
        j["restart"] = r;
        j["converged"] = res.converged;
        j["sweeps"] = res.state.iteration;
        j["residual"] = res.state.max_residual();
        j["history"] = res.state.history;
        if (res.converged) {
            ++successes;
            const auto u = build_unitary(a, res.state.bases);
            j["e_p"] = entangling_power(u, 1e-6);
            j["bases"] = bases_to_json(res.state.bases);
            if (d * d <= 81) {
                j["invariant_table_norm"] =
                    local_invariant_table_norm(u, klein_quadruple()).real();
            }
        }
        if (!out_dir.empty()) {
            const std::string path =
                (fs::path(out_dir) / ("restart_" + std::to_string(r) + ".json")).string();
            write_json_file(path, j);
            man.note_output(path);
        } else {
            std::cout << j.dump(2) << "\n";
        }
    }
    std::cout << "converged restarts: " << successes << "/" << restarts << "\n";
    if (!out_dir.empty()) man.write(out_dir);
    return successes > 0 ? 0 : 2;
}

// ---------------------------------------------------------------- stats ----
int cmd_stats_compare(const std::string& a_path, const std::string& b_path, std::size_t n,
                      std::uint64_t seed, const std::string& out, const std::string& hist_path) {
    const auto ua = load_matrix(a_path);
    const auto ub = load_matrix(b_path);
    const std::size_t d = bipartite_local_dim(ua);
    auto sa = sample_entanglement(ua, n, seed);
    auto sb = sample_entanglement(ub, n, seed + 1);
    const auto ks = ks_two_sample(sa.values, sb.values);
    json j;
    j["n"] = n;
    j["statistic"] = ks.statistic;
    j["p_value"] = ks.p_value;
    j["p_display"] = ks.p_underflow ? "< 1e-300" : std::to_string(ks.p_value);
    write_json_out(out, j);
    if (!hist_path.empty()) {
        const double hi = 1.0 - 1.0 / static_cast<double>(d);
        const std::size_t bins = 200;
        const auto ha = histogram(sa.values, 0.0, hi, bins);
        const auto hb = histogram(sb.values, 0.0, hi, bins);
        std::ofstream f(hist_path);
        if (!f) throw IoError("cannot open for writing: " + hist_path);
        f << "bin_lo,bin_hi,count_a,count_b\n";
        for (std::size_t b = 0; b < bins; ++b) {
            const double lo = hi * b / bins, up = hi * (b + 1) / bins;
            f << lo << "," << up << "," << ha.counts[b] << "," << hb.counts[b] << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------- repro ----
int repro_fig2(std::size_t n, std::uint64_t seed, const std::string& dir, ManifestScope& man) {
    fs::create_directories(dir);
    const std::size_t d = 3;
    const auto a = cyclic_tensor(d);
    const std::string csv_path = (fs::path(dir) / "ep_gt.csv").string();
    std::ofstream f(csv_path);
    f << "e_p,g_t\n";
    Rng master(seed);
    bool ok = true;
    const double lo_ep = 1.0 - 1.0 / (d + 1), lo_gt = 0.5 - 1.0 / (2.0 * d + 2.0),
                 hi_gt = 0.5 + 1.0 / (2.0 * d + 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        Rng r = master.child(i);
        const auto gm = gate_metrics(build_unitary(a, BasisFamily::random(d, r)));
        f << gm.e_p << "," << gm.g_t << "\n";
        ok = ok && gm.e_p >= lo_ep - 1e-10 && gm.e_p <= 1.0 + 1e-10 &&
             gm.g_t >= lo_gt - 1e-10 && gm.g_t <= hi_gt + 1e-10;
    }
    man.note_output(csv_path);
    man.write(dir);
    std::cout << "fig2: " << n << " coherifications at d=3, bounds "
              << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 2;
}

int repro_fig4(std::size_t n, std::uint64_t seed, const std::string& dir, ManifestScope& man) {
    fs::create_directories(dir);
    const auto u81 = build_u81(U81Params::random(seed));
    const auto squares = mols(9);
    const auto p81a = perm_2unitary_from_mols(squares[0], squares[1]);
    const auto p81b = perm_2unitary_from_mols(squares[2], squares[5]);
    auto s_u = sample_entanglement(u81, n, seed + 10);
    auto s_a = sample_entanglement(p81a, n, seed + 11);
    auto s_b = sample_entanglement(p81b, n, seed + 12);
    const auto ks_ua = ks_two_sample(s_u.values, s_a.values);
    const auto ks_ub = ks_two_sample(s_u.values, s_b.values);
    const std::string csv_path = (fs::path(dir) / "hist.csv").string();
    {
        std::ofstream f(csv_path);
        const double hi = 1.0 - 1.0 / 9.0;
        const std::size_t bins = 200;
        const auto hu = histogram(s_u.values, 0.0, hi, bins);
        const auto ha = histogram(s_a.values, 0.0, hi, bins);
        const auto hb = histogram(s_b.values, 0.0, hi, bins);
        f << "bin_lo,bin_hi,count_u81,count_p81a,count_p81b\n";
        for (std::size_t b = 0; b < bins; ++b)
            f << (hi * b / bins) << "," << (hi * (b + 1) / bins) << "," << hu.counts[b] << ","
              << ha.counts[b] << "," << hb.counts[b] << "\n";
    }
    man.note_output(csv_path);
    man.write(dir);
    const bool ok = (ks_ua.p_underflow || ks_ua.p_value < 1e-6) &&
                    (ks_ub.p_underflow || ks_ub.p_value < 1e-6);
    std::cout << "fig4: KS(U81 vs P81a) p " << (ks_ua.p_underflow ? "< 1e-300" : "")
              << (ks_ua.p_underflow ? "" : std::to_string(ks_ua.p_value))
              << ", KS(U81 vs P81b) p "
              << (ks_ub.p_underflow ? "< 1e-300" : std::to_string(ks_ub.p_value)) << " -> "
              << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 2;
}

int repro_table_a(const std::string& dir, ManifestScope& man) {
    fs::create_directories(dir);
    struct Row {
        std::string name;
        double got, want;
    };
    std::vector<Row> rows;
    {
        const auto squares = mols(7);
        const auto p49 = perm_2unitary_from_mols(squares[0], squares[1]);
        const auto f2 = kron(fourier_matrix(7), fourier_matrix(7));
        rows.push_back({"S0(P49)", s_alpha_unitary(p49, 0.0), 1.0});
        rows.push_back({"S0(F2 P49)", s_alpha_unitary(matmul(f2, p49), 0.0), 49.0});
        rows.push_back({"S2(P49)", s_alpha_unitary(p49, 2.0), 1.0});
        rows.push_back({"S2(F2 P49)", s_alpha_unitary(matmul(f2, p49), 2.0), 1.0 / 49.0});
        rows.push_back({"Sinf(P49)", s_alpha_unitary(p49, kAlphaInf), 1.0});
        rows.push_back({"Sinf(F2 P49)", s_alpha_unitary(matmul(f2, p49), kAlphaInf), 1.0 / 7.0});
    }
    {
        const auto u81 = build_u81(U81Params::symmetric_point());
        const auto f2 = kron(fourier_matrix(9), fourier_matrix(9));
        rows.push_back({"S0(U81 sym)", s_alpha_unitary(u81, 0.0), 7.0 / 3.0});
        rows.push_back({"S2(U81 sym)", s_alpha_unitary(u81, 2.0), 5.0 / 9.0});
        rows.push_back(
            {"Sinf(U81 sym)", s_alpha_unitary(u81, kAlphaInf), (3.0 + 2.0 * std::sqrt(3.0)) / 9.0});
        rows.push_back({"S2(F2 U81 sym)", s_alpha_unitary(matmul(f2, u81), 2.0), 5.0 / 729.0});
    }
    const std::string csv_path = (fs::path(dir) / "tableA.csv").string();
    std::ofstream f(csv_path);
    f << "quantity,value,expected,pass\n";
    bool all_ok = true;
    for (const auto& r : rows) {
        const bool ok = std::abs(r.got - r.want) < 1e-12;
        all_ok = all_ok && ok;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%s\n", r.name.c_str(), r.got, r.want,
                      ok ? "PASS" : "FAIL");
        f << buf;
        std::cout << r.name << " = " << r.got << " (want " << r.want << ") "
                  << (ok ? "PASS" : "FAIL") << "\n";
    }
    man.note_output(csv_path);
    man.write(dir);
    return all_ok ? 0 : 2;
}

int repro_inv49(const std::string& bases_path, const std::string& dir, ManifestScope& man) {
    fs::create_directories(dir);
    const auto j = read_json_in(bases_path);
    const auto bases = bases_from_json(j);
    const auto u = build_unitary(cyclic_tensor(7), bases);
    const double inv = local_invariant_table_norm(u, klein_quadruple()).real();
    const bool ok = inv >= kU49InvariantLo - kU49InvariantSlack &&
                    inv <= kU49InvariantHi + kU49InvariantSlack;
    json out;
    out["invariant"] = inv;
    out["window"] = {kU49InvariantLo - kU49InvariantSlack, kU49InvariantHi + kU49InvariantSlack};
    out["pass"] = ok;
    const std::string path = (fs::path(dir) / "inv49.json").string();
    write_json_file(path, out);
    man.note_output(path);
    man.write(dir);
    std::cout << "inv49: invariant = " << inv << " in window " << (ok ? "PASS" : "FAIL")
              << "\n";
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum convolution gates: coherifications of permutation tensors"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    ManifestScope man(argc, argv);

    // latin
    auto* latin = app.add_subcommand("latin", "Latin squares and hypercubes");
    latin->require_subcommand(1);
    std::size_t latin_d = 7, latin_arity = 3, latin_count = 2;
    std::string latin_out;
    auto* latin_mols = latin->add_subcommand("mols", "mutually orthogonal Latin squares");
    latin_mols->add_option("--d", latin_d, "order (prime power >= 3)")->required();
    latin_mols->add_option("--out", latin_out, "output json ('-' = stdout)");
    auto* latin_cubes = latin->add_subcommand("hypercubes", "mutually orthogonal hypercubes");
    latin_cubes->add_option("--d", latin_d)->required();
    latin_cubes->add_option("--arity", latin_arity);
    latin_cubes->add_option("--count", latin_count);
    latin_cubes->add_option("--out", latin_out);

    // coherify
    auto* coherify = app.add_subcommand("coherify", "build coherifications");
    coherify->require_subcommand(1);
    std::string coh_tensor, coh_bases, coh_out;
    auto* coh_build = coherify->add_subcommand("build", "unitary from tensor + bases");
    coh_build->add_option("--tensor", coh_tensor, "tensor json path")->required();
    coh_build->add_option("--bases", coh_bases, "bases json path")->required();
    coh_build->add_option("--out", coh_out);

    // metrics
    auto* metrics = app.add_subcommand("metrics", "entanglement metrics");
    metrics->require_subcommand(1);
    std::string met_in;
    bool met_json = false;
    auto* met_gate = metrics->add_subcommand("gate", "e_p, g_t, d_p of a gate");
    met_gate->add_option("--in", met_in, "matrix json ('-' = stdin)");
    met_gate->add_flag("--json", met_json, "emit json");
    std::size_t sc_d = 3, sc_n = 5000;
    std::uint64_t sc_seed = 1;
    std::string sc_out;
    auto* met_scatter = metrics->add_subcommand("scatter", "(e_p, g_t) of random coherifications");
    met_scatter->add_option("--d", sc_d);
    met_scatter->add_option("--n", sc_n);
    met_scatter->add_option("--seed", sc_seed);
    met_scatter->add_option("--out", sc_out);

    // invariant
    auto* invariant = app.add_subcommand("invariant", "local-unitary invariants");
    invariant->require_subcommand(1);
    std::string inv_in, inv_quad = "id,(12)(34),(13)(24),(14)(23)";
    auto* inv_eval = invariant->add_subcommand("eval", "evaluate a permutation-quadruple invariant");
    inv_eval->add_option("--in", inv_in);
    inv_eval->add_option("--quad", inv_quad);

    // coherence
    auto* coherence = app.add_subcommand("coherence", "coherence measures");
    coherence->require_subcommand(1);
    std::string cr_in;
    double cr_alpha = 2.0;
    std::size_t cr_budget = 100000;
    std::uint64_t cr_seed = 7;
    auto* cr_range = coherence->add_subcommand("range", "inner estimate of range(S_alpha)");
    cr_range->add_option("--in", cr_in);
    cr_range->add_option("--alpha", cr_alpha);
    cr_range->add_option("--budget", cr_budget);
    cr_range->add_option("--seed", cr_seed);

    // family
    auto* family = app.add_subcommand("family", "published gate families");
    family->require_subcommand(1);
    std::string fam_params, fam_out;
    std::uint64_t fam_seed = 1;
    int fam_restarts = 20;
    bool fam_verify = false;
    auto* fam_u81 = family->add_subcommand("u81", "d=9 continuous 2-unitary family");
    fam_u81->add_option("--params", fam_params, "params json (a21,a22,a31,a32)");
    fam_u81->add_option("--seed", fam_seed, "random parameters when --params absent");
    fam_u81->add_option("--out", fam_out);
    auto* fam_d6 = family->add_subcommand("d6", "36x36 orthogonal candidate");
    fam_d6->add_option("--out", fam_out);
    auto* fam_p16 = family->add_subcommand("p16", "two-ququart 2-unitary permutation");
    fam_p16->add_flag("--verify-circuit", fam_verify);
    fam_p16->add_option("--out", fam_out);
    auto* fam_u49 = family->add_subcommand("u49", "d=7 cyclic-ansatz search");
    fam_u49->add_option("--seed", fam_seed);
    fam_u49->add_option("--restarts", fam_restarts);
    fam_u49->add_option("--out", fam_out);

    // search
    auto* search_cmd = app.add_subcommand("search", "Sinkhorn-style alternating search");
    search_cmd->require_subcommand(1);
    std::size_t se_d = 7, se_sweeps = 20000;
    std::string se_tensor = "cyclic", se_constraint = "none", se_out;
    int se_restarts = 20;
    std::uint64_t se_seed = 3;
    auto* se_run = search_cmd->add_subcommand("run", "run restarts");
    se_run->add_option("--d", se_d);
    se_run->add_option("--tensor", se_tensor, "'cyclic' or tensor json path");
    se_run->add_option("--constraint", se_constraint, "'none' or 'cyclic'");
    se_run->add_option("--restarts", se_restarts);
    se_run->add_option("--seed", se_seed);
    se_run->add_option("--max-sweeps", se_sweeps);
    se_run->add_option("--out", se_out, "output directory");

    // stats
    auto* stats = app.add_subcommand("stats", "statistical distinguishers");
    stats->require_subcommand(1);
    std::string st_a, st_b, st_out, st_hist;
    std::size_t st_n = 10000;
    std::uint64_t st_seed = 5;
    auto* st_cmp = stats->add_subcommand("compare", "entanglement histograms + KS test");
    st_cmp->add_option("--a", st_a)->required();
    st_cmp->add_option("--b", st_b)->required();
    st_cmp->add_option("--n", st_n);
    st_cmp->add_option("--seed", st_seed);
    st_cmp->add_option("--out", st_out);
    st_cmp->add_option("--hist", st_hist);

    // repro
    auto* repro = app.add_subcommand("repro", "regenerate published figures/tables");
    std::string rp_id, rp_dir = "repro_out", rp_bases;
    std::size_t rp_n = 2000;
    std::uint64_t rp_seed = 1;
    repro->add_option("id", rp_id, "fig2 | fig4 | tableA | inv49")->required();
    repro->add_option("--n", rp_n);
    repro->add_option("--seed", rp_seed);
    repro->add_option("--out", rp_dir, "output directory");
    repro->add_option("--bases", rp_bases, "u49 bases json (for inv49)");

    try {
        app.parse(argc, argv);

        if (latin_mols->parsed()) return cmd_latin_mols(latin_d, latin_out);
        if (latin_cubes->parsed())
            return cmd_latin_hypercubes(latin_d, latin_arity, latin_count, latin_out);
        if (coh_build->parsed()) return cmd_coherify_build(coh_tensor, coh_bases, coh_out);
        if (met_gate->parsed()) return cmd_metrics_gate(met_in, met_json);
        if (met_scatter->parsed()) return cmd_metrics_scatter(sc_d, sc_n, sc_seed, sc_out);
        if (inv_eval->parsed()) return cmd_invariant_eval(inv_in, inv_quad);
        if (cr_range->parsed()) return cmd_coherence_range(cr_in, cr_alpha, cr_budget, cr_seed);
        if (fam_u81->parsed()) return cmd_family_u81(fam_params, fam_seed, fam_out);
        if (fam_d6->parsed()) return cmd_family_d6(fam_out);
        if (fam_p16->parsed()) return cmd_family_p16(fam_verify, fam_out);
        if (fam_u49->parsed()) return cmd_family_u49(fam_seed, fam_restarts, fam_out);
        if (se_run->parsed()) {
            man.note_seed(se_seed);
            return cmd_search_run(se_d, se_tensor, se_constraint, se_restarts, se_seed,
                                  se_sweeps, se_out, man);
        }
        if (st_cmp->parsed())
            return cmd_stats_compare(st_a, st_b, st_n, st_seed, st_out, st_hist);
        if (repro->parsed()) {
            man.note_seed(rp_seed);
            if (rp_id == "fig2") return repro_fig2(rp_n, rp_seed, rp_dir, man);
            if (rp_id == "fig4") return repro_fig4(rp_n, rp_seed, rp_dir, man);
            if (rp_id == "tableA") return repro_table_a(rp_dir, man);
            if (rp_id == "inv49") return repro_inv49(rp_bases, rp_dir, man);
            throw InputError("unknown repro id: " + rp_id);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const IoError& e) {
        json err;
        err["error"] = error_code_name(e.code());
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const ParseError& e) {
        json err;
        err["error"] = error_code_name(e.code());
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const Error& e) {
        json err;
        err["error"] = error_code_name(e.code());
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "INTERNAL";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
