#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lmod/detection.hpp"
#include "lmod/errors.hpp"
#include "lmod/io.hpp"
#include "lmod/properties.hpp"
#include "lmod/quality.hpp"

namespace {

using namespace lmod;

struct StreamArgs {
    std::string input;
    std::string format = "ls-csv";
    double resolution = 1.0;
    std::string domain; // "lo:hi" raw-second override
};

void add_stream_options(CLI::App& cmd, StreamArgs& args, bool required = true) {
    auto* input = cmd.add_option("-i,--input", args.input, "stream file");
    if (required) input->required();
    cmd.add_option("--format", args.format, "stream format: ls-csv | sociopatterns")
        ->default_val("ls-csv");
    cmd.add_option("--resolution", args.resolution, "raw seconds per tick")->default_val(1.0);
    cmd.add_option("--domain", args.domain,
                   "raw-second domain override 'lo:hi' (default: first to last event)");
}

io::StreamReadOptions stream_options(const StreamArgs& args) {
    io::StreamReadOptions options;
    options.format = io::parse_format(args.format);
    options.resolution_seconds = args.resolution;
    if (!args.domain.empty()) {
        const auto colon = args.domain.find(':');
        if (colon == std::string::npos)
            throw ValidationError("domain override must look like 'lo:hi'");
        options.raw_domain = {std::stod(args.domain.substr(0, colon)),
                              std::stod(args.domain.substr(colon + 1))};
    }
    return options;
}

void fill_manifest_stream(io::RunManifest& manifest, const StreamArgs& args) {
    manifest.inputs.push_back(args.input);
    manifest.resolution_seconds = args.resolution;
    manifest.parameters["format"] = args.format;
    if (!args.domain.empty()) manifest.parameters["domain"] = args.domain;
}

void emit_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

void emit_json(const nlohmann::json& j, const std::string& path) {
    emit_text(j.dump(2) + "\n", path);
}

int cmd_score(const StreamArgs& stream_args, const std::string& partition_path,
              const std::string& kind_text, double omega, const std::string& output) {
    const auto stream = io::read_stream(stream_args.input, stream_options(stream_args));
    const auto partition = io::read_partition(partition_path, stream);
    const auto kind = parse_kind(kind_text);
    const auto report = l_modularity(stream, partition, kind, omega);

    io::RunManifest manifest;
    manifest.command = "score";
    fill_manifest_stream(manifest, stream_args);
    manifest.inputs.push_back(partition_path);
    manifest.parameters["kind"] = std::string(to_string(kind));
    manifest.parameters["omega"] = io::format_sig(omega);
    manifest.outputs.push_back(output.empty() ? "-" : output);

    emit_json(io::quality_report_json(report, partition, manifest), output);
    return 0;
}

int cmd_day_partition(const StreamArgs& stream_args, double gap_hours,
                      const std::string& output) {
    const auto stream = io::read_stream(stream_args.input, stream_options(stream_args));
    const auto partition = io::build_day_partition(stream, gap_hours);
    if (output.empty() || output == "-")
        io::write_partition(partition, stream, std::cout);
    else
        io::write_partition(partition, stream, output);
    return 0;
}

int cmd_detect(const StreamArgs& stream_args, const std::string& method,
               const DetectionConfig& base_config, const std::string& kind_text,
               const std::string& partition_output, const std::string& output) {
    if (method != "ns" && method != "greedy")
        throw ValidationError("unknown detection method '" + method + "'");
    const auto stream = io::read_stream(stream_args.input, stream_options(stream_args));
    DetectionConfig config = base_config;
    config.kind = parse_kind(kind_text);

    auto partition = detect_ns(stream, config);
    if (method == "greedy")
        partition = detect_greedy_lm(stream, partition, config);

    if (!partition_output.empty())
        io::write_partition(partition, stream, partition_output);

    io::RunManifest manifest;
    manifest.command = "detect";
    fill_manifest_stream(manifest, stream_args);
    manifest.parameters["method"] = method;
    manifest.parameters["window"] = std::to_string(config.window_ticks);
    manifest.parameters["jaccard"] = io::format_sig(config.jaccard_threshold);
    manifest.parameters["seed"] = std::to_string(config.seed);
    manifest.parameters["omega"] = io::format_sig(config.omega);
    manifest.parameters["kind"] = std::string(to_string(config.kind));
    if (!partition_output.empty()) manifest.outputs.push_back(partition_output);
    manifest.outputs.push_back(output.empty() ? "-" : output);

    nlohmann::json j;
    j["manifest"] = io::manifest_json(manifest);
    j["method"] = method;
    j["n_communities"] = partition.community_count();
    j["rho"] = io::round_sig(discontinuity(partition, stream));
    j["scores"] = {
        {"mm", io::quality_report_json(
                   l_modularity(stream, partition, ExpectationKind::MM, config.omega), partition)},
        {"jm", io::quality_report_json(
                   l_modularity(stream, partition, ExpectationKind::JM, config.omega), partition)},
    };
    if (!partition_output.empty()) j["partition"] = partition_output;
    emit_json(j, output);
    return 0;
}

int cmd_sweep(const StreamArgs& stream_args, const std::string& method,
              std::vector<Tick> windows, std::vector<double> params,
              const DetectionConfig& base_config, const std::string& output) {
    if (method != "ns" && method != "greedy")
        throw ValidationError("unknown detection method '" + method + "'");
    if (windows.empty() || params.empty())
        throw ValidationError("sweep needs at least one window and one parameter");
    const auto stream = io::read_stream(stream_args.input, stream_options(stream_args));

    std::string csv = "window,param,q_mm,q_jm,n_communities,rho\n";
    for (Tick window : windows) {
        for (double param : params) {
            csv += std::to_string(window) + "," + io::format_sig(param) + ",";
            try {
                DetectionConfig config = base_config;
                config.window_ticks = window;
                config.jaccard_threshold = param;
                auto partition = detect_ns(stream, config);
                if (method == "greedy")
                    partition = detect_greedy_lm(stream, partition, config);
                const auto mm = l_modularity(stream, partition, ExpectationKind::MM, config.omega);
                const auto jm = l_modularity(stream, partition, ExpectationKind::JM, config.omega);
                csv += io::format_sig(mm.q) + "," + io::format_sig(jm.q) + "," +
                       std::to_string(partition.community_count()) + "," +
                       io::format_sig(mm.rho) + "\n";
            } catch (const Error& e) {
                std::cerr << "sweep cell window=" << window << " param=" << param
                          << " failed: " << e.what() << "\n";
                csv += "nan,nan,0,nan\n";
            }
        }
    }
    emit_text(csv, output);
    return 0;
}

int cmd_check(const StreamArgs& stream_args, double omega, const std::string& output) {
    io::RunManifest manifest;
    manifest.command = "check";
    manifest.parameters["omega"] = io::format_sig(omega);
    if (!stream_args.input.empty()) fill_manifest_stream(manifest, stream_args);
    manifest.outputs.push_back(output.empty() ? "-" : output);

    int deviations = 0;
    auto record = [&](nlohmann::json entry) {
        if (entry.at("deviates").get<bool>()) ++deviations;
        return entry;
    };

    nlohmann::json matrix = nlohmann::json::array();
    for (ExpectationKind kind : {ExpectationKind::CM, ExpectationKind::JM, ExpectationKind::MM}) {
        for (double w : {0.0, omega}) {
            const auto report = evaluate_properties(kind, w);
            const auto expected = expected_properties(kind, w);
            nlohmann::json row;
            row["kind"] = std::string(to_string(kind));
            row["omega"] = io::round_sig(w);
            row["smoothness"] = record(io::property_check_json(report.smoothness,
                                                               expected.smoothness));
            row["topochrone"] = record(io::property_check_json(report.topochrone,
                                                               expected.topochrone));
            row["aggregation"] = record(io::property_check_json(report.aggregation,
                                                                expected.aggregation));
            matrix.push_back(std::move(row));
        }
    }

    // The multislice baseline is expected to depend on the slicing.
    const Tick ms_windows[] = {1, 2, 4};
    const double spread = ms_aggregation_spread(omega > 0.0 ? omega : 2.0, ms_windows);
    const bool ms_depends = spread > 1e-6;
    if (!ms_depends) ++deviations;

    nlohmann::json j;
    j["manifest"] = io::manifest_json(manifest);
    j["matrix"] = std::move(matrix);
    j["ms_modularity"] = {
        {"aggregation_spread", io::round_sig(spread)},
        {"depends_on_slicing", ms_depends},
        {"expected_dependence", true},
        {"deviates", !ms_depends},
    };

    if (!stream_args.input.empty()) {
        const auto stream = io::read_stream(stream_args.input, stream_options(stream_args));
        std::vector<CommunityId> everyone(stream.node_count(), 0);
        const auto partition = TemporalPartition::from_static(
            everyone, {stream.domain().t_min, stream.domain().t_max});
        std::vector<Tick> windows = {1};
        for (Tick w : {Tick{2}, Tick{4}})
            if (stream.domain().length() % w == 0) windows.push_back(w);
        nlohmann::json rows = nlohmann::json::array();
        for (ExpectationKind kind : {ExpectationKind::CM, ExpectationKind::JM,
                                     ExpectationKind::MM}) {
            auto check = check_aggregation_independence(stream, partition, kind, omega, windows);
            nlohmann::json row = record(io::property_check_json(check, true));
            row["kind"] = std::string(to_string(kind));
            rows.push_back(std::move(row));
        }
        j["input_aggregation"] = std::move(rows);
    }

    j["deviations"] = deviations;
    emit_json(j, output);
    return deviations == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Longitudinal modularity for link streams: scoring, detection, axiom checks"};
    app.require_subcommand(1);

    StreamArgs score_stream, detect_stream, sweep_stream, check_stream, day_stream;
    std::string score_partition, score_kind = "mm", score_output;
    double score_omega = 1.0;

    auto* score = app.add_subcommand("score", "score a partition against a stream");
    add_stream_options(*score, score_stream);
    score->add_option("-p,--partition", score_partition, "partition CSV")->required();
    score->add_option("--kind", score_kind, "expectation kind: cm | jm | mm")->default_val("mm");
    score->add_option("--omega", score_omega, "smoothness weight")->default_val(1.0);
    score->add_option("-o,--output", score_output, "report path (default stdout)");

    DetectionConfig detect_config;
    std::string detect_method = "ns", detect_kind = "mm";
    std::string detect_partition_output, detect_output;
    auto* detect = app.add_subcommand("detect", "detect communities and score them");
    add_stream_options(*detect, detect_stream);
    detect->add_option("--method", detect_method, "ns | greedy")->default_val("ns");
    detect->add_option("--window", detect_config.window_ticks, "slicing window in ticks")
        ->default_val(Tick{1});
    detect->add_option("--jaccard", detect_config.jaccard_threshold, "label-carry threshold")
        ->default_val(0.3);
    detect->add_option("--seed", detect_config.seed, "rng seed")->default_val(std::uint64_t{0});
    detect->add_option("--max-iterations", detect_config.max_iterations, "refinement cap")
        ->default_val(256);
    detect->add_option("--omega", detect_config.omega, "smoothness weight")->default_val(1.0);
    detect->add_option("--kind", detect_kind, "greedy objective kind")->default_val("mm");
    detect->add_option("--partition-output", detect_partition_output, "partition CSV path");
    detect->add_option("-o,--output", detect_output, "report path (default stdout)");

    DetectionConfig sweep_config;
    std::string sweep_method = "ns", sweep_output;
    std::vector<Tick> sweep_windows;
    std::vector<double> sweep_params;
    auto* sweep = app.add_subcommand("sweep", "window x threshold detection sweep as CSV");
    add_stream_options(*sweep, sweep_stream);
    sweep->add_option("--windows", sweep_windows, "slicing windows")
        ->required()
        ->delimiter(',');
    sweep->add_option("--params", sweep_params, "jaccard thresholds")->required()->delimiter(',');
    sweep->add_option("--method", sweep_method, "ns | greedy")->default_val("ns");
    sweep->add_option("--seed", sweep_config.seed, "rng seed")->default_val(std::uint64_t{0});
    sweep->add_option("--omega", sweep_config.omega, "smoothness weight")->default_val(1.0);
    sweep->add_option("-o,--output", sweep_output, "CSV path (default stdout)");

    double check_omega = 2.0;
    std::string check_output;
    auto* check = app.add_subcommand("check", "verify the axiom matrix");
    add_stream_options(*check, check_stream, /*required=*/false);
    check->add_option("--omega", check_omega, "positive smoothness weight to test")
        ->default_val(2.0);
    check->add_option("-o,--output", check_output, "report path (default stdout)");

    double day_gap_hours = 4.0;
    std::string day_output;
    auto* day = app.add_subcommand("day-partition", "class partition segmented by activity days");
    add_stream_options(*day, day_stream);
    day->add_option("--gap-hours", day_gap_hours, "inactivity gap that splits days")
        ->default_val(4.0);
    day->add_option("-o,--output", day_output, "partition CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (score->parsed())
            return cmd_score(score_stream, score_partition, score_kind, score_omega, score_output);
        if (detect->parsed())
            return cmd_detect(detect_stream, detect_method, detect_config, detect_kind,
                              detect_partition_output, detect_output);
        if (sweep->parsed())
            return cmd_sweep(sweep_stream, sweep_method, sweep_windows, sweep_params, sweep_config,
                             sweep_output);
        if (check->parsed())
            return cmd_check(check_stream, check_omega, check_output);
        if (day->parsed())
            return cmd_day_partition(day_stream, day_gap_hours, day_output);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
