// Command-line front end: fits a generalized blockmodel to a valued network.
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockmodel/analysis.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generalized blockmodeling of valued networks"};
    app.option_defaults()->always_capture_default(false);

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file; flags given here override it");

    // Every value is collected as text and applied through set_option, so the
    // config file and the flags share one parser.
    std::vector<std::pair<std::string, std::string>> given;
    std::map<std::string, std::string> values;
    const std::vector<std::pair<std::string, std::string>> valued_flags = {
        {"input", "Dense matrix or edge list, or builtin:notes-borrowing"},
        {"format", "dense | edges"},
        {"approach", "binary | valued | ss | ad"},
        {"blocks", "Allowed block types, e.g. null,reg"},
        {"blocks-matrix", "Pre-specified model: rows by ';', positions by ',', alternatives by '|'"},
        {"f", "max | sum | mean"},
        {"m", "Valued threshold m"},
        {"k", "Number of clusters"},
        {"slice", "Binarize: cell >= t becomes 1"},
        {"censor", "Cap values at c"},
        {"restarts", "Local search restarts"},
        {"seed", "Random seed"},
        {"diagonal", "ignore | variant | ordinary"},
        {"out", "Output directory"},
        {"threads", "Worker threads for restarts"},
    };
    for (const auto& [name, help] : valued_flags) {
        app.add_option_function<std::string>(
            "--" + name, [&given, name](const std::string& v) { given.emplace_back(name, v); }, help);
    }
    for (const std::string name : {"normalize", "preset-workflow", "suggest-m", "exhaustive"}) {
        app.add_flag_callback("--" + name, [&given, name] { given.emplace_back(name, "true"); });
    }
    app.get_option("--approach")->check(CLI::IsMember({"binary", "valued", "ss", "ad"}));
    app.get_option("--format")->check(CLI::IsMember({"dense", "edges"}));
    app.get_option("--f")->check(CLI::IsMember({"max", "sum", "mean"}));
    app.get_option("--diagonal")->check(CLI::IsMember({"ignore", "variant", "ordinary"}));

    CLI11_PARSE(app, argc, argv);

    blockmodel::AnalysisConfig cfg;
    try {
        if (!config_path.empty()) cfg = blockmodel::read_config_file(config_path);
        for (const auto& [k, v] : given) blockmodel::set_option(cfg, k, v);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return blockmodel::run_analysis(cfg, std::cout, std::cerr);
}
