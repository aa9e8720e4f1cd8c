// Command-line frontend: builds N-valid trees, derives masks / refinable
// functions / wavelet banks from them, and verifies every defining identity.
// Exit codes: 0 success, 1 usage or I/O problem, 2 mathematical verification
// failure.  Reports are JSON on stdout; human summaries go to stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vilenkin/errors.hpp"
#include "vilenkin/io.hpp"

namespace vk = vilenkin;
using vk::json;

namespace {

struct MathFailure : std::runtime_error {
    explicit MathFailure(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

vk::PTree load_tree(const std::string& path) { return vk::tree_from_json(load_json(path)); }

std::string validation_summary(const vk::ValidationReport& rep, int p, int N) {
    std::size_t total = 1;
    for (int i = 0; i < N; ++i) total *= static_cast<std::size_t>(p);
    std::size_t present = 0;
    for (const auto& [w, c] : rep.window_counts)
        if (c == 1) ++present;
    return std::to_string(present) + "/" + std::to_string(total) + " windows, height " +
           std::to_string(rep.height);
}

json validation_to_json(const vk::ValidationReport& rep) {
    json j;
    j["valid"] = rep.valid;
    j["structure_ok"] = rep.structure_ok;
    j["zero_prefix_ok"] = rep.zero_prefix_ok;
    j["height"] = rep.height;
    json missing = json::array(), duplicated = json::array();
    for (const auto& w : rep.missing) missing.push_back(w);
    for (const auto& w : rep.duplicated) duplicated.push_back(w);
    j["missing_windows"] = missing;
    j["duplicated_windows"] = duplicated;
    if (!rep.structural_errors.empty()) j["structural_errors"] = rep.structural_errors;
    return j;
}

void warn_p2(int p) {
    if (p == 2)
        std::cerr << "note: p = 2 lies outside the p >= 3 hypothesis of the construction;"
                  << " results are Haar sanity cases\n";
}

vk::MraBundle derive_bundle(const vk::PTree& tree, const vk::PhaseTable* phases) {
    vk::Mask mask = vk::mask_from_tree(tree, phases);
    vk::ElementarySet support = vk::support_set(mask, /*require_elementary=*/false);
    vk::PhiTable phi = vk::phi_hat(mask, support);
    vk::phi_values(phi);
    vk::CoefficientTable beta = vk::solve_coefficients(mask);
    return vk::MraBundle{tree, std::move(mask), std::move(support), std::move(phi),
                         std::move(beta)};
}

vk::Report verify_bundle(const vk::MraBundle& b, int depth, double tol) {
    vk::Report rep;
    if (b.tree) {
        vk::ValidationReport tv = vk::validate_nvalid(*b.tree);
        rep.add("tree.nvalid", tv.valid, tv.valid ? 0.0 : 1.0,
                tv.valid ? "" : validation_summary(tv, b.tree->p(), b.tree->N()));
    }
    rep.merge(vk::check_mask(b.mask));

    bool walk_ok = true;
    try {
        vk::ElementarySet walked = vk::support_set(b.mask, /*require_elementary=*/false);
        walk_ok = walked == b.support;
    } catch (const vk::MaskError&) {
        walk_ok = false;
    }
    rep.add("support.matches_walk", walk_ok, walk_ok ? 0.0 : 1.0);
    rep.merge(vk::is_elementary(b.support));

    // Recompute the hat/value tables and compare against the stored ones.
    double hat_dev = 0.0, val_dev = 0.0;
    try {
        vk::PhiTable fresh = vk::phi_hat(b.mask, b.support);
        vk::phi_values(fresh);
        for (const auto& [coset, v] : fresh.hat()) hat_dev = std::max(hat_dev, v.distance(b.phi.hat_at(coset)));
        if (b.phi.values().size() == fresh.values().size()) {
            for (std::size_t i = 0; i < fresh.values().size(); ++i)
                val_dev = std::max(val_dev, fresh.values()[i].distance(b.phi.values()[i]));
        } else {
            val_dev = 1.0;
        }
    } catch (const std::exception&) {
        hat_dev = val_dev = 1.0;
    }
    rep.add("phi.hat_matches_product", hat_dev <= tol, hat_dev);
    rep.add("phi.values_match_inversion", val_dev <= tol, val_dev);

    // Finite Fourier round trip of the stored samples.
    double rt_dev = 0.0;
    auto hat2 = vk::hat_from_values(b.phi);
    for (const auto& [coset, v] : hat2) rt_dev = std::max(rt_dev, v.distance(b.phi.hat_at(coset)));
    rep.add("phi.fourier_round_trip", rt_dev <= tol, rt_dev);

    double beta_dev = 0.0;
    for (std::size_t k = 0; k < b.mask.size(); ++k)
        beta_dev = std::max(beta_dev, vk::mask_from_coefficients(b.beta, k)
                                          .distance(vk::RootSum::from_scalar(b.mask.at(k))));
    rep.add("beta.reproduces_mask", beta_dev <= tol, beta_dev);
    double norm_dev =
        b.beta.sum_norm2().distance(vk::RootSum::integer(b.beta.p(), b.beta.p()));
    rep.add("beta.squared_norm_is_p", norm_dev <= tol, norm_dev);

    rep.merge(vk::verify_shift_orthonormality(b.phi, depth, tol));
    rep.merge(vk::verify_refinement(b.phi, b.mask, b.beta, std::max(tol, 1e-12)));
    return rep;
}

int finish_with_report(const vk::Report& rep, const std::string& what) {
    emit(vk::report_to_json(rep));
    std::size_t passed = 0;
    for (const auto& c : rep.items) passed += c.pass ? 1 : 0;
    std::cerr << what << ": " << passed << "/" << rep.items.size()
              << " checks passed (max deviation " << rep.max_deviation() << ")\n";
    return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal MRA and wavelet construction on p-adic Vilenkin groups"};
    app.require_subcommand(1);

    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads (accepted for compatibility; single-threaded)")
        ->check(CLI::PositiveNumber);

    // ---- tree ----------------------------------------------------------
    auto* tree_cmd = app.add_subcommand("tree", "build, validate, enumerate, rebuild, export");
    tree_cmd->require_subcommand(1);

    int p = 3, N = 1;
    std::uint64_t seed = 0;
    std::string strategy = "debruijn-path";
    std::string out_path, in_path, mask_path, format = "json", phases_path;
    std::size_t limit = SIZE_MAX;
    int depth = 2, levels = 1;
    double tol = 1e-10;

    auto* t_build = tree_cmd->add_subcommand("build", "construct an N-valid tree");
    t_build->add_option("--p", p, "prime p")->required();
    t_build->add_option("--N", N, "window length N")->required();
    t_build->add_option("--strategy", strategy, "debruijn-path | greedy-branch | min-height");
    t_build->add_option("--seed", seed, "seed for greedy-branch");
    t_build->add_option("-o,--output", out_path, "output tree JSON")->required();

    auto* t_validate = tree_cmd->add_subcommand("validate", "check N-validity");
    t_validate->add_option("tree", in_path, "tree JSON file")->required();

    auto* t_enumerate = tree_cmd->add_subcommand("enumerate", "list all N-valid trees (p^N <= 16)");
    t_enumerate->add_option("--p", p, "prime p")->required();
    t_enumerate->add_option("--N", N, "window length N")->required();
    t_enumerate->add_option("--limit", limit, "stop after this many trees");
    t_enumerate->add_option("-o,--output", out_path, "output JSON (array of trees)");

    auto* t_from_mask = tree_cmd->add_subcommand("from-mask", "rebuild the tree from a mask support");
    t_from_mask->add_option("--mask", mask_path, "mask JSON file")->required();
    t_from_mask->add_option("-o,--output", out_path, "output tree JSON")->required();

    auto* t_export = tree_cmd->add_subcommand("export", "re-serialize a tree");
    t_export->add_option("tree", in_path, "tree JSON file")->required();
    t_export->add_option("--format", format, "json | dot");
    t_export->add_option("-o,--output", out_path, "output file")->required();

    // ---- mra -----------------------------------------------------------
    auto* mra_cmd = app.add_subcommand("mra", "derive and verify the refinable function");
    mra_cmd->require_subcommand(1);

    std::string csv_dir;
    auto* m_derive = mra_cmd->add_subcommand("derive", "tree -> mask, support, phi, coefficients");
    m_derive->add_option("tree", in_path, "tree JSON file")->required();
    m_derive->add_option("--phases", phases_path, "unimodular phase table JSON");
    m_derive->add_option("-o,--output", out_path, "output bundle JSON")->required();
    m_derive->add_option("--csv-dir", csv_dir, "also write mask/beta/support/phi tables as CSV");

    auto* m_verify = mra_cmd->add_subcommand("verify", "re-check every identity of a bundle");
    m_verify->add_option("bundle", in_path, "bundle JSON file")->required();
    m_verify->add_option("--depth", depth, "shift depth s for the Gram checks");
    m_verify->add_option("--tol", tol, "numeric tolerance")->check(CLI::PositiveNumber);

    // ---- wavelet -------------------------------------------------------
    auto* wav_cmd = app.add_subcommand("wavelet", "derive and verify the wavelet bank");
    wav_cmd->require_subcommand(1);
    std::string bank_path;

    auto* w_derive = wav_cmd->add_subcommand("derive", "bundle -> psi_1..psi_{p-1}");
    w_derive->add_option("bundle", in_path, "bundle JSON file")->required();
    w_derive->add_option("-o,--output", out_path, "output bank JSON")->required();
    w_derive->add_option("--csv-dir", csv_dir, "also write one psi value table CSV per wavelet");

    auto* w_verify = wav_cmd->add_subcommand("verify", "orthonormal-basis checks for W_0");
    w_verify->add_option("bundle", in_path, "bundle JSON file")->required();
    w_verify->add_option("--bank", bank_path, "bank JSON (re-derived when absent)");
    w_verify->add_option("--depth", depth, "shift depth s");
    w_verify->add_option("--tol", tol, "numeric tolerance")->check(CLI::PositiveNumber);

    // ---- transform -----------------------------------------------------
    auto* tr_cmd = app.add_subcommand("transform", "analyze / synthesize finite signals");
    tr_cmd->require_subcommand(1);
    std::string input_path, bundle_path;

    auto* x_analyze = tr_cmd->add_subcommand("analyze", "signal CSV -> coefficient JSON");
    x_analyze->add_option("--bundle", bundle_path, "bundle JSON file")->required();
    x_analyze->add_option("--bank", bank_path, "bank JSON (re-derived when absent)");
    x_analyze->add_option("--input", input_path, "signal CSV")->required();
    x_analyze->add_option("--levels", levels, "analysis depth J")->check(CLI::PositiveNumber);
    x_analyze->add_option("-o,--output", out_path, "output coefficients JSON")->required();

    auto* x_synth = tr_cmd->add_subcommand("synthesize", "coefficient JSON -> signal CSV");
    x_synth->add_option("--bundle", bundle_path, "bundle JSON file")->required();
    x_synth->add_option("--bank", bank_path, "bank JSON (re-derived when absent)");
    x_synth->add_option("--input", input_path, "coefficients JSON")->required();
    x_synth->add_option("-o,--output", out_path, "output signal CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // --help exits 0, every usage error exits 1
    }

    try {
        if (t_build->parsed()) {
            warn_p2(p);
            vk::PTree tree = vk::build_nvalid(p, N, vk::parse_strategy(strategy), seed);
            write_file(out_path, vk::tree_to_json(tree).dump(2) + "\n");
            vk::ValidationReport v = vk::validate_nvalid(tree);
            json j;
            j["command"] = "tree build";
            j["p"] = p;
            j["N"] = N;
            j["strategy"] = strategy;
            j["nodes"] = tree.node_count();
            j["height"] = v.height;
            j["valid"] = v.valid;
            j["output"] = out_path;
            emit(j);
            std::cerr << "built: " << validation_summary(v, p, N) << "\n";
            return v.valid ? 0 : 2;
        }
        if (t_validate->parsed()) {
            vk::PTree tree = load_tree(in_path);
            vk::ValidationReport v = vk::validate_nvalid(tree);
            json j = validation_to_json(v);
            j["p"] = tree.p();
            j["N"] = tree.N();
            emit(j);
            std::cerr << validation_summary(v, tree.p(), tree.N()) << "\n";
            return v.valid ? 0 : 2;
        }
        if (t_enumerate->parsed()) {
            std::vector<vk::PTree> trees = vk::enumerate_nvalid(p, N, limit);
            if (!out_path.empty()) {
                json arr = json::array();
                for (const auto& t : trees) arr.push_back(vk::tree_to_json(t));
                write_file(out_path, arr.dump(2) + "\n");
            }
            json j;
            j["command"] = "tree enumerate";
            j["p"] = p;
            j["N"] = N;
            j["count"] = trees.size();
            emit(j);
            std::cerr << "enumerated " << trees.size() << " trees\n";
            return 0;
        }
        if (t_from_mask->parsed()) {
            json mj = load_json(mask_path);
            if (mj.contains("mask")) mj = mj.at("mask");  // accept a full bundle too
            vk::Mask mask = vk::mask_from_json(mj);
            std::set<vk::Window> support;
            for (std::size_t k : mask.nonzero_indices()) {
                std::vector<int> w = mask.word_of(k);
                support.insert(vk::Window(w.rbegin(), w.rend()));
            }
            vk::PTree tree = vk::tree_from_support(support, mask.p(), mask.N());
            write_file(out_path, vk::tree_to_json(tree).dump(2) + "\n");
            vk::ValidationReport v = vk::validate_nvalid(tree);
            json j;
            j["command"] = "tree from-mask";
            j["nodes"] = tree.node_count();
            j["valid"] = v.valid;
            emit(j);
            std::cerr << "rebuilt: " << validation_summary(v, tree.p(), tree.N()) << "\n";
            return v.valid ? 0 : 2;
        }
        if (t_export->parsed()) {
            vk::PTree tree = load_tree(in_path);
            if (format == "json")
                write_file(out_path, vk::tree_to_json(tree).dump(2) + "\n");
            else if (format == "dot")
                write_file(out_path, vk::tree_to_dot(tree));
            else
                throw std::invalid_argument("unknown format: " + format);
            json j;
            j["command"] = "tree export";
            j["format"] = format;
            j["output"] = out_path;
            emit(j);
            return 0;
        }
        if (m_derive->parsed()) {
            vk::PTree tree = load_tree(in_path);
            warn_p2(tree.p());
            vk::ValidationReport v = vk::validate_nvalid(tree);
            if (!v.valid)
                std::cerr << "warning: tree is not N-valid (" << validation_summary(v, tree.p(), tree.N())
                          << "); deriving anyway\n";
            vk::PhaseTable phases;
            const vk::PhaseTable* phases_ptr = nullptr;
            if (!phases_path.empty()) {
                phases = vk::phases_from_json(load_json(phases_path), tree.p());
                phases_ptr = &phases;
            }
            vk::MraBundle b = derive_bundle(tree, phases_ptr);
            write_file(out_path, vk::bundle_to_json(b).dump(2) + "\n");
            if (!csv_dir.empty()) {
                std::filesystem::create_directories(csv_dir);
                write_file(csv_dir + "/mask.csv", vk::mask_to_csv(b.mask));
                write_file(csv_dir + "/beta.csv", vk::beta_to_csv(b.beta));
                write_file(csv_dir + "/support.csv", vk::elementary_to_csv(b.support));
                write_file(csv_dir + "/phi_hat.csv", vk::phi_hat_to_csv(b.phi));
                write_file(csv_dir + "/phi.csv", vk::phi_values_to_csv(b.phi));
            }
            json j;
            j["command"] = "mra derive";
            j["p"] = b.mask.p();
            j["N"] = b.mask.N();
            j["M"] = b.support.M();
            j["support_size"] = b.support.size();
            j["output"] = out_path;
            emit(j);
            std::cerr << "derived: |E| = " << b.support.size() << ", M = " << b.support.M() << "\n";
            return 0;
        }
        if (m_verify->parsed()) {
            vk::MraBundle b = vk::bundle_from_json(load_json(in_path));
            warn_p2(b.mask.p());
            return finish_with_report(verify_bundle(b, depth, tol), "mra verify");
        }
        if (w_derive->parsed()) {
            vk::MraBundle b = vk::bundle_from_json(load_json(in_path));
            vk::WaveletBank bank = vk::build_bank(b.mask, b.beta, b.phi);
            write_file(out_path, vk::bank_to_json(bank).dump(2) + "\n");
            if (!csv_dir.empty()) {
                std::filesystem::create_directories(csv_dir);
                for (int l = 1; l < bank.p(); ++l)
                    write_file(csv_dir + "/psi_" + std::to_string(l) + ".csv",
                               vk::psi_values_to_csv(bank, l));
            }
            json j;
            j["command"] = "wavelet derive";
            j["wavelets"] = bank.psi_tables().size();
            j["psi_table_entries"] = bank.psi_tables().empty() ? 0 : bank.psi_tables()[0].size();
            j["output"] = out_path;
            emit(j);
            std::cerr << "derived " << bank.psi_tables().size() << " wavelets\n";
            return 0;
        }
        if (w_verify->parsed()) {
            vk::MraBundle b = vk::bundle_from_json(load_json(in_path));
            vk::WaveletBank bank = bank_path.empty() ? vk::build_bank(b.mask, b.beta, b.phi)
                                                      : vk::bank_from_json(load_json(bank_path));
            vk::Report rep = vk::verify_wavelets(bank, b.phi, b.support, b.mask, depth, tol);
            if (!bank_path.empty()) {
                vk::WaveletBank fresh = vk::build_bank(b.mask, b.beta, b.phi);
                double dev = 0.0;
                for (std::size_t l = 0; l < fresh.psi_tables().size(); ++l)
                    for (std::size_t i = 0; i < fresh.psi_tables()[l].size(); ++i)
                        dev = std::max(dev, fresh.psi_tables()[l][i].distance(
                                                 bank.psi_tables()[l][i]));
                rep.add("bank.matches_derivation", dev <= tol, dev);
            }
            return finish_with_report(rep, "wavelet verify");
        }
        if (x_analyze->parsed() || x_synth->parsed()) {
            vk::MraBundle b = vk::bundle_from_json(load_json(bundle_path));
            vk::WaveletBank bank = bank_path.empty() ? vk::build_bank(b.mask, b.beta, b.phi)
                                                      : vk::bank_from_json(load_json(bank_path));
            if (x_analyze->parsed()) {
                vk::FiniteSignal f = vk::signal_from_csv(read_file(input_path));
                vk::CoefficientBundle c = vk::analyze(f, b.phi, bank, b.beta, levels);
                write_file(out_path, vk::coefficients_to_json(c).dump(2) + "\n");
                vk::Report rep = vk::energy_report(f, c, b.phi, bank, b.beta, tol);
                emit(vk::report_to_json(rep));
                std::cerr << "analyzed " << f.samples.size() << " samples at " << levels
                          << " level(s)\n";
                return 0;
            }
            vk::CoefficientBundle c = vk::coefficients_from_json(load_json(input_path));
            vk::FiniteSignal f = vk::synthesize(c, b.phi, bank, b.beta);
            write_file(out_path, vk::signal_to_csv(f));
            json j;
            j["command"] = "transform synthesize";
            j["samples"] = f.samples.size();
            j["output"] = out_path;
            emit(j);
            std::cerr << "synthesized " << f.samples.size() << " samples\n";
            return 0;
        }
    } catch (const vk::MaskError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const vk::ConsistencyError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const vk::FormatError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const vk::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
