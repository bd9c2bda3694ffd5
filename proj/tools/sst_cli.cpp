#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sst/eval.hpp"
#include "sst/io.hpp"
#include "sst/noise.hpp"
#include "sst/reconstruct.hpp"
#include "sst/scenario.hpp"
#include "sst/selftest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string iso_now() {
    auto t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct ConfigCli {
    sst::AnalysisConfig cfg;
    std::string config_path;

    void add_flags(CLI::App* app) {
        app->add_option("--config", config_path, "JSON config file (flags take precedence)");
        app->add_option("--voices", cfg.n_voices, "voices per octave");
        app->add_option("--delta", cfg.delta, "wavelet half-bandwidth");
        app->add_option("--lambda", cfg.lambda, "ridge smoothness weight");
        app->add_option("--k", cfg.k, "number of seasonal components");
        app->add_option("--gamma", cfg.gamma, "threshold (negative = auto)");
        app->add_option("--kappa", cfg.kappa, "auto-threshold scale factor");
        app->add_option("--c1", cfg.c1, "lowest seasonal frequency (negative = auto)");
        app->add_option("--d", cfg.d_separation, "component separation parameter");
        app->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    }

    /// Precedence: explicit flags > config file > defaults.
    void resolve(CLI::App* app) {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open config " + config_path);
            json j = json::parse(in);
            sst::AnalysisConfig file_cfg;
            auto get = [&](const char* key, auto& slot) {
                if (j.contains(key)) slot = j[key].get<std::decay_t<decltype(slot)>>();
            };
            get("voices", file_cfg.n_voices);
            get("delta", file_cfg.delta);
            get("lambda", file_cfg.lambda);
            get("k", file_cfg.k);
            get("gamma", file_cfg.gamma);
            get("kappa", file_cfg.kappa);
            get("c1", file_cfg.c1);
            get("d", file_cfg.d_separation);
            get("threads", file_cfg.threads);
            if (j.contains("pad") && j["pad"].get<std::string>() == "paper")
                file_cfg.pad_mode = sst::PadMode::ReflectPaper;
            auto keep_flag = [&](const char* flag, auto member) {
                if (app->count(flag) == 0) cfg.*member = file_cfg.*member;
            };
            keep_flag("--voices", &sst::AnalysisConfig::n_voices);
            keep_flag("--delta", &sst::AnalysisConfig::delta);
            keep_flag("--lambda", &sst::AnalysisConfig::lambda);
            keep_flag("--k", &sst::AnalysisConfig::k);
            keep_flag("--gamma", &sst::AnalysisConfig::gamma);
            keep_flag("--kappa", &sst::AnalysisConfig::kappa);
            keep_flag("--c1", &sst::AnalysisConfig::c1);
            keep_flag("--d", &sst::AnalysisConfig::d_separation);
            keep_flag("--threads", &sst::AnalysisConfig::threads);
            if (app->count("--pad") == 0) cfg.pad_mode = file_cfg.pad_mode;
        }
        if (const char* env = std::getenv("SST_THREADS")) cfg.threads = static_cast<unsigned>(std::atoi(env));
    }

    json echo() const {
        json j;
        j["voices"] = cfg.n_voices;
        j["delta"] = cfg.delta;
        j["lambda"] = cfg.lambda;
        j["k"] = cfg.k;
        j["gamma"] = cfg.gamma;
        j["kappa"] = cfg.kappa;
        j["c1"] = cfg.c1;
        j["d"] = cfg.d_separation;
        j["pad"] = cfg.pad_mode == sst::PadMode::Reflect2N ? "reflect2n" : "paper";
        j["threads"] = cfg.threads;
        return j;
    }
};

void write_manifest(const std::string& path, const std::string& command, const json& config,
                    std::uint64_t seed, const std::string& input_path,
                    const std::vector<std::string>& outputs, const std::string& started) {
    json j;
    j["tool_version"] = sst::io::kToolVersion;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    if (!input_path.empty()) {
        j["input"]["path"] = input_path;
        j["input"]["fnv64"] = sst::io::fnv1a_file(input_path);
    }
    j["timestamps"]["started"] = started;
    j["timestamps"]["finished"] = iso_now();
    j["outputs"] = outputs;
    sst::io::write_text(path, j.dump(2) + "\n");
}

int cmd_synth(const std::string& scenario, std::uint64_t seed, const std::string& out_dir,
              std::size_t n, double tau) {
    std::string started = iso_now();
    fs::create_directories(out_dir);
    sst::scenario::ScenarioData data = sst::scenario::build_scenario(scenario, seed, n, tau);
    std::vector<std::vector<double>> rows(n), truth_rows(n);
    for (std::size_t l = 0; l < n; ++l) {
        double t = data.y.time_at(l);
        rows[l] = {static_cast<double>(l + 1), t, data.y.values[l]};
        truth_rows[l] = {static_cast<double>(l + 1), t, data.comp_a[l], data.comp_b[l],
                         data.trend[l], data.noise[l]};
    }
    std::string sig = out_dir + "/signal.csv", tru = out_dir + "/truth.csv";
    sst::io::write_csv(sig, {"index", "t", "y"}, rows);
    sst::io::write_csv(tru, {"index", "t", data.comp_a_name, data.comp_b_name, "T", "noise"},
                       truth_rows);
    json cfg;
    cfg["scenario"] = scenario;
    cfg["n"] = n;
    cfg["tau"] = tau;
    write_manifest(out_dir + "/manifest.json", "synth", cfg, seed, "", {sig, tru}, started);
    std::cout << "wrote " << sig << ", " << tru << "\n";
    return 0;
}

int cmd_analyze(const std::string& in_path, double tau_flag, const std::string& out_dir,
                ConfigCli& cc, std::uint64_t seed, bool dump_cwt) {
    std::string started = iso_now();
    fs::create_directories(out_dir);
    sst::SampledSignal y = sst::io::read_signal_csv(in_path, tau_flag);
    cc.cfg.validate();
    sst::Decomposition dec = sst::decompose(y, cc.cfg);

    std::string dec_path = out_dir + "/decomposition.csv";
    sst::io::write_decomposition_csv(dec_path, y, dec);

    // squeezed matrix and ridge export (thresholded field, per the run's gamma)
    sst::MotherWavelet wavelet = sst::MotherWavelet::make(cc.cfg.delta);
    sst::CwtField field = sst::cwt_analyze(y, wavelet, cc.cfg.n_voices, cc.cfg.pad_mode, cc.cfg.threads);
    sst::Matrix<double> omega = sst::reassignment(field);
    sst::FrequencyGrid freq = sst::FrequencyGrid::make(field.n_padded, y.tau);
    sst::SstField sfield = sst::synchrosqueeze(field, omega, dec.gamma, freq);
    std::string bin_path = out_dir + "/sst.bin", side_path = out_dir + "/sst.json";
    sst::io::write_sst_binary(bin_path, side_path, sfield, field.grid, y.tau);

    std::string ridge_path = out_dir + "/ridges.csv";
    {
        std::vector<std::string> header{"n", "t"};
        for (std::size_t k = 0; k < dec.components.size(); ++k) {
            header.push_back("bin_" + std::to_string(k + 1));
            header.push_back("if_" + std::to_string(k + 1));
        }
        std::vector<std::vector<double>> rows(y.size());
        for (std::size_t l = 0; l < y.size(); ++l) {
            rows[l] = {static_cast<double>(l + 1), y.time_at(l)};
            for (const auto& c : dec.components) {
                rows[l].push_back(std::round(c.inst_freq[l] / freq.delta_xi));
                rows[l].push_back(c.inst_freq[l]);
            }
        }
        sst::io::write_csv(ridge_path, header, rows);
    }

    std::vector<std::string> outputs{dec_path, bin_path, side_path, ridge_path};
    if (dump_cwt) {
        std::string cwt_path = out_dir + "/cwt_magnitude.csv";
        std::vector<std::string> header;
        header.reserve(field.n_padded);
        for (std::size_t n = 0; n < field.n_padded; ++n) header.push_back("t" + std::to_string(n));
        std::vector<std::vector<double>> rows(field.w.rows());
        for (std::size_t i = 0; i < field.w.rows(); ++i) {
            rows[i].resize(field.n_padded);
            for (std::size_t n = 0; n < field.n_padded; ++n) rows[i][n] = std::abs(field.w(i, n));
        }
        sst::io::write_csv(cwt_path, header, rows);
        outputs.push_back(cwt_path);
    }

    json cfg = cc.echo();
    cfg["gamma_effective"] = dec.gamma;
    cfg["c1_effective"] = dec.c1;
    cfg["r_psi"] = dec.r_psi;
    json scores = json::array();
    for (const auto& c : dec.components) scores.push_back(c.ridge_score);
    cfg["ridge_scores"] = scores;
    write_manifest(out_dir + "/manifest.json", "analyze", cfg, seed, in_path, outputs, started);
    std::cout << "wrote " << dec_path << " (gamma=" << dec.gamma << ", c1=" << dec.c1 << ")\n";
    return 0;
}

int cmd_eval(const std::string& est_dir, const std::string& truth_path, std::string out_dir) {
    std::string started = iso_now();
    if (out_dir.empty()) out_dir = est_dir;
    fs::create_directories(out_dir);
    sst::io::Csv est = sst::io::read_csv(est_dir + "/decomposition.csv");
    sst::io::Csv truth = sst::io::read_csv(truth_path);
    if (est.rows.size() != truth.rows.size())
        throw std::runtime_error("eval: estimate and truth row counts differ");

    auto truth_col = [&](std::initializer_list<const char*> names) {
        for (const char* n : names)
            for (const auto& h : truth.header)
                if (h == n) return truth.column(n);
        throw std::runtime_error("eval: truth file lacks a required column");
    };
    std::vector<double> ta = truth_col({"s21", "s11", "comp_a"});
    std::vector<double> tb = truth_col({"s22", "s12", "comp_b"});
    std::vector<double> tT = truth_col({"T", "trend"});
    std::vector<double> tn = truth_col({"noise"});

    json report;
    report["rrase"]["comp_1"] = sst::eval::rrase(est.column("comp_1"), ta);
    report["rrase"]["comp_2"] = sst::eval::rrase(est.column("comp_2"), tb);
    report["rrase"]["trend"] = sst::eval::rrase(est.column("trend"), tT);
    bool noise_zero = true;
    for (double v : tn)
        if (v != 0.0) noise_zero = false;
    if (!noise_zero) report["rrase"]["residual"] = sst::eval::rrase(est.column("residual"), tn);

    std::ostringstream table;
    table << "target      RRASE\n";
    for (auto& [k, v] : report["rrase"].items()) {
        char line[64];
        std::snprintf(line, sizeof(line), "%-10s %8.5f\n", k.c_str(), v.get<double>());
        table << line;
    }
    sst::io::write_text(out_dir + "/report.json", report.dump(2) + "\n");
    sst::io::write_text(out_dir + "/report.txt", table.str());
    std::cout << table.str();
    write_manifest(out_dir + "/eval_manifest.json", "eval", json::object(), 0, truth_path,
                   {out_dir + "/report.json", out_dir + "/report.txt"}, started);
    return 0;
}

int cmd_spectrum(const std::vector<double>& ar, const std::vector<double>& ma, double sigma2,
                 const std::string& out_path) {
    sst::noise::ArmaSpec spec;
    spec.ar_poly = {1.0};
    for (double c : ar) spec.ar_poly.push_back(c);
    spec.ma_poly = {1.0};
    for (double c : ma) spec.ma_poly.push_back(c);
    spec.validate();
    std::vector<std::vector<double>> rows(512);
    for (int i = 0; i < 512; ++i) {
        double xi = M_PI * static_cast<double>(i) / 511.0;
        rows[i] = {xi, sst::noise::arma_spectral_density(spec, xi, sigma2)};
    }
    sst::io::write_csv(out_path, {"xi", "density"}, rows);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_selftest() {
    auto results = sst::selftest::run_all();
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.detail << "]\n";
        all = all && r.pass;
    }
    return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchrosqueezing decomposition of seasonal time series"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "generate a simulation scenario");
    std::string scen, out_dir = "out";
    std::uint64_t seed = 0;
    std::size_t n = 1000;
    double tau = 0.01;
    synth->add_option("--scenario", scen, "scenario name, e.g. Y0, Y_1_2_1, clean_s2_T1")->required();
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--out", out_dir, "output directory");
    synth->add_option("--n", n, "number of samples");
    synth->add_option("--tau", tau, "sampling interval");

    auto* analyze = app.add_subcommand("analyze", "decompose a sampled series");
    std::string in_path;
    double tau_flag = -1.0;
    bool dump_cwt = false;
    std::string pad_mode = "reflect2n";
    ConfigCli cc;
    analyze->add_option("--in", in_path, "input CSV with (t,value) or a single value column")->required();
    analyze->add_option("--tau", tau_flag, "sampling interval for single-column input");
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_option("--seed", seed, "seed recorded in the manifest");
    analyze->add_option("--pad", pad_mode, "padding: reflect2n or paper");
    analyze->add_flag("--dump-cwt", dump_cwt, "also write |w| as CSV");
    cc.add_flags(analyze);

    auto* evalc = app.add_subcommand("eval", "score a decomposition against ground truth");
    std::string est_dir, truth_path, eval_out;
    evalc->add_option("--est", est_dir, "directory containing decomposition.csv")->required();
    evalc->add_option("--truth", truth_path, "truth CSV from synth")->required();
    evalc->add_option("--out", eval_out, "report directory (default: est dir)");

    auto* spectrum = app.add_subcommand("spectrum", "ARMA spectral density table");
    std::vector<double> ar, ma;
    double sigma2 = 1.0;
    std::string spec_out = "spectrum.csv";
    spectrum->add_option("--ar", ar, "AR coefficients after the leading 1");
    spectrum->add_option("--ma", ma, "MA coefficients after the leading 1");
    spectrum->add_option("--sigma2", sigma2, "innovation variance");
    spectrum->add_option("--out", spec_out, "output CSV");

    app.add_subcommand("selftest", "run the built-in property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(scen, seed, out_dir, n, tau);
        if (analyze->parsed()) {
            if (pad_mode == "paper")
                cc.cfg.pad_mode = sst::PadMode::ReflectPaper;
            else if (pad_mode != "reflect2n")
                throw std::invalid_argument("unknown pad mode: " + pad_mode);
            cc.resolve(analyze);
            return cmd_analyze(in_path, tau_flag, out_dir, cc, seed, dump_cwt);
        }
        if (evalc->parsed()) return cmd_eval(est_dir, truth_path, eval_out);
        if (spectrum->parsed()) return cmd_spectrum(ar, ma, sigma2, spec_out);
        return cmd_selftest();
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
