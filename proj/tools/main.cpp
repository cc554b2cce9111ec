// Command-line front end: code construction, encode/decode, Monte Carlo
// simulation and the analysis tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "polarshape/awgn.hpp"
#include "polarshape/serialize.hpp"

using namespace polarshape;
using nlohmann::json;

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content << '\n';
    } else {
        write_text_file(out_path, content + "\n");
    }
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

BitBlock parse_bits(const std::string& s) {
    BitBlock bits;
    for (char c : s) {
        if (c == '0' || c == '1') bits.push_back(c - '0');
        else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("bit string may contain only 0 and 1");
        }
    }
    return bits;
}

std::string bits_to_string(const BitBlock& bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::optional<uint64_t> seed;
    std::optional<int> jobs;
    bool frozen_zero = false;
};

SimConfig load_config(const CommonOpts& opts) {
    SimConfig cfg = sim_config_from_json(read_json_file(opts.config_path));
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.jobs) cfg.jobs = *opts.jobs;
    if (opts.frozen_zero) cfg.frozen_zero = true;
    return cfg;
}

BuildParams build_params_from(const SimConfig& cfg, double capacity) {
    BuildParams params;
    params.inner_length = cfg.inner_length;
    params.outer_length = cfg.outer_length;
    params.epsilon_inner = cfg.epsilon_inner;
    params.epsilon_outer = cfg.epsilon_outer;
    params.mode = cfg.mode;
    params.epsilon_derand = cfg.epsilon_derand;
    params.inner_samples = cfg.inner_samples;
    params.outer_samples = cfg.outer_samples;
    params.seed = cfg.seed;
    params.frozen_zero = cfg.frozen_zero;
    params.jobs = cfg.jobs;
    if (cfg.rate_ratio) {
        const int n = cfg.inner_length * cfg.outer_length;
        params.target_data_bits = static_cast<int>(std::lround(*cfg.rate_ratio * capacity * n));
    }
    return params;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shaped polar coding over binary-input DMCs"};
    app.require_subcommand(1);

    CommonOpts opts;
    uint64_t frame_seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "config JSON")->required();
        cmd->add_option("--out", opts.out_path, "output path (default stdout)");
        cmd->add_option("--seed", [&](const std::vector<std::string>& v) {
            opts.seed = std::stoull(v[0]);
            return true;
        }, "seed override");
        cmd->add_option("--jobs", [&](const std::vector<std::string>& v) {
            opts.jobs = std::stoi(v[0]);
            return true;
        }, "worker threads");
        cmd->add_flag("--frozen-zero", opts.frozen_zero, "pin frozen values to zero");
    };

    // construct
    CLI::App* construct = app.add_subcommand("construct", "build a code and write its spec");
    add_common(construct);
    construct->callback([&]() {
        const SimConfig cfg = load_config(opts);
        const ChannelInfo info = optimal_input(cfg.channel);
        const double p = cfg.p.value_or(info.optimal_p);
        const CodeSpec code = build_code(cfg.channel, p, build_params_from(cfg, info.capacity));
        json j = code_spec_to_json(code);
        j["capacity"] = info.capacity;
        j["optimal_p"] = info.optimal_p;
        emit(opts.out_path, j.dump(2));
    });

    // encode
    CLI::App* enc = app.add_subcommand("encode", "encode a message with a stored code spec");
    std::string code_path, message_str;
    bool random_message = false;
    enc->add_option("--code", code_path, "code spec JSON")->required();
    enc->add_option("--message", message_str, "message bits as a 0/1 string");
    enc->add_flag("--random", random_message, "draw a random message");
    enc->add_option("--frame-seed", frame_seed, "per-frame common randomness seed");
    enc->add_option("--out", opts.out_path, "output path (default stdout)");
    enc->callback([&]() {
        const CodeSpec code = code_spec_from_json(read_json_file(code_path));
        BitBlock message;
        if (random_message) {
            RandomStream s(derive_seed(code.shaper_seed, frame_seed),
                           {stream_purpose::kMessage, 0, 0});
            message.resize(code.data_bits());
            for (auto& b : message) b = s.next_bit();
        } else {
            message = parse_bits(message_str);
        }
        const BitBlock x = encode(code, message, frame_seed);
        json j;
        j["message"] = bits_to_string(message);
        j["codeword"] = bits_to_string(x);
        j["frame_seed"] = frame_seed;
        emit(opts.out_path, j.dump(2));
    });

    // decode
    CLI::App* dec = app.add_subcommand("decode", "decode received symbols with a stored code spec");
    std::string received_str;
    dec->add_option("--code", code_path, "code spec JSON")->required();
    dec->add_option("--received", received_str, "received symbol indices, comma separated")
        ->required();
    dec->add_option("--frame-seed", frame_seed, "per-frame common randomness seed");
    dec->add_option("--out", opts.out_path, "output path (default stdout)");
    dec->callback([&]() {
        const CodeSpec code = code_spec_from_json(read_json_file(code_path));
        std::vector<int> y;
        for (double v : parse_list(received_str)) y.push_back(static_cast<int>(v));
        const DecodeResult res = decode(code, y, frame_seed);
        json j;
        j["message"] = bits_to_string(res.message);
        j["failure"] = res.failure;
        emit(opts.out_path, j.dump(2));
    });

    // simulate
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo frame-error simulation");
    add_common(sim);
    sim->callback([&]() {
        const SimReport report = run_simulation(load_config(opts));
        emit(opts.out_path, report_to_json(report).dump(2));
    });

    // sweep
    CLI::App* sw = app.add_subcommand("sweep", "repeat a simulation along one axis");
    std::string axis_name, values_csv;
    add_common(sw);
    sw->add_option("--axis", axis_name, "M | epsilon | q | mode")->required();
    sw->add_option("--values", values_csv, "comma-separated axis values")->required();
    sw->callback([&]() {
        const SimConfig cfg = load_config(opts);
        const auto rows = sweep(cfg, sweep_axis_from_string(axis_name), parse_list(values_csv));
        std::ostringstream out;
        if (axis_name == "q") {
            out << "q,p,gap,bound";
            out.precision(12);
            for (const auto& row : rows) {
                out << '\n' << row.label << ',' << row.report.used_p << ','
                    << row.report.design_rate << ',' << row.report.rate_capacity_ratio;
            }
        } else {
            out << "axis,value," << report_csv_header();
            for (const auto& row : rows) {
                out << '\n' << row.axis << ',' << row.value << ','
                    << report_csv_row(row.label, row.report);
            }
        }
        emit(opts.out_path, out.str());
    });

    // shaper-dist
    CLI::App* sd = app.add_subcommand("shaper-dist", "exact shaper distance table");
    double sd_p = 0.3;
    int sd_len = 8;
    std::string sd_eps = "0.2,0.1,0.05";
    sd->add_option("--p", sd_p, "source bias P(X=1)");
    sd->add_option("--L", sd_len, "shaper block length (<= 16)");
    sd->add_option("--epsilons", sd_eps, "comma-separated thresholds");
    sd->add_option("--out", opts.out_path, "output path (default stdout)");
    sd->callback([&]() {
        const auto rows = shaper_distance_experiment(sd_p, sd_len, parse_list(sd_eps));
        std::ostringstream out;
        out.precision(12);
        out << "epsilon,K,distance,bound";
        for (const auto& row : rows) {
            out << '\n' << row.epsilon << ',' << row.payload_bits << ',' << row.distance << ','
                << row.bound;
        }
        emit(opts.out_path, out.str());
    });

    // awgn-table
    CLI::App* at = app.add_subcommand("awgn-table",
                                      "constellation gaps on the power-constrained AWGN channel");
    std::string snrs_csv = "1,10";
    int max_m = 6;
    at->add_option("--snrs", snrs_csv, "comma-separated SNR values");
    at->add_option("--max-m", max_m, "largest constellation exponent");
    at->add_option("--out", opts.out_path, "output path (default stdout)");
    at->callback([&]() {
        std::ostringstream out;
        out.precision(12);
        out << "type,m,snr,capacity,mi,gap,bound";
        for (double snr : parse_list(snrs_csv)) {
            const double capacity = awgn_capacity(snr);
            const double v = 1.0 / snr;
            for (int m = 1; m <= max_m; ++m) {
                const Constellation quad = gauss_quadrature_constellation(m, snr);
                const double mi_q = mi_discrete_awgn(quad, v, 1e-9);
                const double bound_q =
                    4.0 * (1.0 + snr) * std::pow(snr / (1.0 + snr), std::exp2(m + 1));
                out << '\n' << "quadrature," << m << ',' << snr << ',' << capacity << ',' << mi_q
                    << ',' << capacity - mi_q << ',' << bound_q;
                const Constellation dyad = dyadic_gaussian_constellation(m, snr);
                const double mi_d = mi_discrete_awgn(dyad, v, 1e-9);
                out << '\n' << "dyadic," << m << ',' << snr << ',' << capacity << ',' << mi_d
                    << ',' << capacity - mi_d << ',' << snr * std::exp2(-m);
            }
        }
        emit(opts.out_path, out.str());
    });

    // gallager-gap
    CLI::App* gg = app.add_subcommand("gallager-gap",
                                      "rate gap of the rational-approximation baseline");
    std::string qs_csv = "4,8,16,32,64,128,256";
    add_common(gg);
    gg->add_option("--qs", qs_csv, "comma-separated q values (powers of two)");
    gg->callback([&]() {
        const SimConfig cfg = load_config(opts);
        const ChannelInfo info = optimal_input(cfg.channel);
        const double p = cfg.p.value_or(info.optimal_p);
        std::ostringstream out;
        out.precision(12);
        out << "q,k,p,approx,gap,bound";
        for (double qd : parse_list(qs_csv)) {
            const uint64_t q = static_cast<uint64_t>(qd);
            const GallagerGap gap = gallager_rate_gap(cfg.channel, p, q);
            out << '\n' << q << ',' << gap.k << ',' << p << ','
                << static_cast<double>(gap.k) / static_cast<double>(q) << ',' << gap.exact_gap
                << ',' << gap.bound;
        }
        emit(opts.out_path, out.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
