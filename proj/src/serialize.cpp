#include "polarshape/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polarshape {

using nlohmann::json;

namespace {
constexpr int kCodeSpecVersion = 1;
}

json channel_to_json(const Dmc& channel) {
    json j;
    j["type"] = "table";
    j["rows"] = {channel.row(0), channel.row(1)};
    return j;
}

Dmc channel_from_json(const json& j) {
    const std::string type = j.value("type", "table");
    if (type == "table") {
        const auto rows = j.at("rows");
        return Dmc(rows.at(0).get<std::vector<double>>(), rows.at(1).get<std::vector<double>>());
    }
    return builtin_channel(type, j.value("params", std::vector<double>{}));
}

json code_spec_to_json(const CodeSpec& spec) {
    json j;
    j["format"] = "polarshape-code";
    j["version"] = kCodeSpecVersion;
    j["L"] = spec.inner_length;
    j["M"] = spec.outer_length;
    j["N"] = spec.block_length;
    j["p"] = spec.p;
    j["channel"] = channel_to_json(spec.channel);
    j["mode"] = spec.shaper.mode == ShaperMode::kDerandomized ? "derandomized" : "stochastic";
    j["extractor_set"] = spec.shaper.extractor_set;
    j["deterministic_set"] = spec.shaper.deterministic_set;
    j["inner_entropies"] = spec.inner_entropies;
    j["epsilon_inner"] = spec.epsilon_inner;
    j["epsilon_outer"] = spec.epsilon_outer;
    j["seeds"] = {{"construction", spec.construction_seed},
                  {"frozen", spec.frozen_seed},
                  {"shaper", spec.shaper_seed}};
    j["design_rate"] = spec.design_rate;
    json levels = json::array();
    for (const FrozenSet& lvl : spec.levels) {
        levels.push_back({{"level", lvl.level},
                          {"positions", lvl.positions},
                          {"values", lvl.values}});
    }
    j["levels"] = std::move(levels);
    return j;
}

CodeSpec code_spec_from_json(const json& j) {
    if (j.value("format", "") != "polarshape-code") {
        throw std::invalid_argument("code spec file: unrecognized format");
    }
    if (j.at("version").get<int>() != kCodeSpecVersion) {
        throw std::invalid_argument("code spec file: unsupported version");
    }
    CodeSpec spec;
    spec.inner_length = j.at("L").get<int>();
    spec.outer_length = j.at("M").get<int>();
    spec.block_length = j.at("N").get<int>();
    spec.p = j.at("p").get<double>();
    spec.channel = channel_from_json(j.at("channel"));
    spec.shaper.block_length = spec.inner_length;
    spec.shaper.p = spec.p;
    spec.shaper.mode = j.at("mode").get<std::string>() == "derandomized"
                           ? ShaperMode::kDerandomized
                           : ShaperMode::kStochastic;
    spec.shaper.extractor_set = j.at("extractor_set").get<std::vector<int>>();
    spec.shaper.deterministic_set = j.at("deterministic_set").get<std::vector<int>>();
    spec.inner_entropies = j.at("inner_entropies").get<std::vector<double>>();
    spec.epsilon_inner = j.at("epsilon_inner").get<double>();
    spec.epsilon_outer = j.at("epsilon_outer").get<double>();
    spec.construction_seed = j.at("seeds").at("construction").get<uint64_t>();
    spec.frozen_seed = j.at("seeds").at("frozen").get<uint64_t>();
    spec.shaper_seed = j.at("seeds").at("shaper").get<uint64_t>();
    spec.design_rate = j.at("design_rate").get<double>();
    for (const json& lvl : j.at("levels")) {
        FrozenSet fs;
        fs.level = lvl.at("level").get<int>();
        fs.outer_length = spec.outer_length;
        fs.positions = lvl.at("positions").get<std::vector<int>>();
        fs.values = lvl.at("values").get<std::vector<uint8_t>>();
        spec.levels.push_back(std::move(fs));
    }
    spec.validate();
    return spec;
}

SimConfig sim_config_from_json(const json& j) {
    SimConfig cfg;
    cfg.channel = channel_from_json(j.at("channel"));
    if (j.contains("p")) cfg.p = j.at("p").get<double>();
    cfg.inner_length = j.value("L", cfg.inner_length);
    cfg.outer_length = j.value("M", cfg.outer_length);
    cfg.epsilon_inner = j.value("epsilon_inner", cfg.epsilon_inner);
    cfg.epsilon_outer = j.value("epsilon_outer", cfg.epsilon_outer);
    if (j.contains("mode")) {
        cfg.mode = j.at("mode").get<std::string>() == "derandomized" ? ShaperMode::kDerandomized
                                                                     : ShaperMode::kStochastic;
    }
    if (j.contains("epsilon_derand")) cfg.epsilon_derand = j.at("epsilon_derand").get<double>();
    if (j.contains("rate_ratio")) cfg.rate_ratio = j.at("rate_ratio").get<double>();
    cfg.inner_samples = j.value("inner_samples", cfg.inner_samples);
    cfg.outer_samples = j.value("outer_samples", cfg.outer_samples);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.frozen_zero = j.value("frozen_zero", cfg.frozen_zero);
    cfg.jobs = j.value("jobs", cfg.jobs);
    return cfg;
}

json report_to_json(const SimReport& r) {
    json j;
    j["frames"] = r.frames;
    j["frame_errors"] = r.frame_errors;
    j["bit_errors"] = r.bit_errors;
    j["data_bits_total"] = r.data_bits_total;
    j["fer"] = r.fer;
    j["fer_lo"] = r.fer_interval.lo;
    j["fer_hi"] = r.fer_interval.hi;
    j["ber"] = r.ber;
    j["design_rate"] = r.design_rate;
    j["capacity"] = r.capacity;
    j["optimal_p"] = r.optimal_p;
    j["used_p"] = r.used_p;
    j["rate_capacity_ratio"] = r.rate_capacity_ratio;
    j["randomness_per_frame"] = r.randomness_per_frame;
    j["construct_seconds"] = r.construct_seconds;
    j["encode_seconds_per_frame"] = r.encode_seconds_per_frame;
    j["decode_seconds_per_frame"] = r.decode_seconds_per_frame;
    return j;
}

std::string report_csv_header() {
    return "label,frames,frame_errors,fer,fer_lo,fer_hi,bit_errors,ber,design_rate,capacity,"
           "rate_capacity_ratio,randomness_per_frame,construct_s,encode_s_per_frame,"
           "decode_s_per_frame";
}

std::string report_csv_row(const std::string& label, const SimReport& r) {
    std::ostringstream out;
    out.precision(10);
    out << label << ',' << r.frames << ',' << r.frame_errors << ',' << r.fer << ','
        << r.fer_interval.lo << ',' << r.fer_interval.hi << ',' << r.bit_errors << ',' << r.ber
        << ',' << r.design_rate << ',' << r.capacity << ',' << r.rate_capacity_ratio << ','
        << r.randomness_per_frame << ',' << r.construct_seconds << ','
        << r.encode_seconds_per_frame << ',' << r.decode_seconds_per_frame;
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace polarshape
