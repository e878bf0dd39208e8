#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "criterion.hpp"
#include "datasets.hpp"
#include "io.hpp"
#include "network.hpp"
#include "report.hpp"
#include "search.hpp"
#include "summary.hpp"

namespace blockmodel {

/// Input name that selects the embedded notes-borrowing network.
inline constexpr std::string_view kBuiltinNotesBorrowing = "builtin:notes-borrowing";

/// One analysis run. Every field has a `key=value` config-file form and a
/// `--key value` flag; see set_option.
struct AnalysisConfig {
    std::string input;
    io::InputFormat format = io::InputFormat::dense;
    Approach::Kind approach = Approach::Kind::hom_ss;
    bool approach_set = false;
    std::string blocks;         // global allowed list, e.g. "null,reg"
    std::string blocks_matrix;  // pre-specified model, e.g. "null,reg;reg,null|com"
    RowColFunction f = RowColFunction::max;
    std::optional<double> m;
    std::size_t k = 3;
    std::size_t restarts = 100;
    std::uint64_t seed = 1;
    std::optional<double> slice;
    std::optional<double> censor;
    bool normalize = false;
    std::optional<DiagonalPolicy> diagonal;
    std::string out = "blockmodel-out";
    bool preset_workflow = false;
    bool suggest_m = false;
    bool exhaustive = false;
    std::size_t threads = 1;
};

namespace detail {

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on" || v.empty()) return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument(key + ": expected a boolean, got '" + v + "'");
}

inline double parse_positive(const std::string& key, const std::string& v) {
    const auto x = io::parse_number(v);
    if (!x || !(*x > 0.0) || !std::isfinite(*x))
        throw std::invalid_argument(key + ": expected a positive number, got '" + v + "'");
    return *x;
}

inline std::uint64_t parse_count(const std::string& key, const std::string& v, bool allow_zero = false) {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size() || (!allow_zero && x == 0))
        throw std::invalid_argument(key + ": expected a " + (allow_zero ? "non-negative" : "positive") +
                                    " integer, got '" + v + "'");
    return x;
}

}  // namespace detail

/// Applies one option by its key (flag name without dashes).
inline void set_option(AnalysisConfig& c, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "input") c.input = value;
    else if (key == "format") c.format = io::parse_input_format(value);
    else if (key == "approach") {
        c.approach = parse_approach_kind(value);
        c.approach_set = true;
    } else if (key == "blocks") {
        parse_block_type_set(value);
        c.blocks = value;
    } else if (key == "blocks-matrix") c.blocks_matrix = value;
    else if (key == "f") c.f = parse_row_col_function(value);
    else if (key == "m") c.m = parse_positive(key, value);
    else if (key == "k") c.k = parse_count(key, value);
    else if (key == "restarts") c.restarts = parse_count(key, value);
    else if (key == "seed") c.seed = parse_count(key, value, true);
    else if (key == "slice") c.slice = parse_positive(key, value);
    else if (key == "censor") c.censor = parse_positive(key, value);
    else if (key == "normalize") c.normalize = parse_bool(key, value);
    else if (key == "diagonal") c.diagonal = parse_diagonal_policy(value);
    else if (key == "out") c.out = value;
    else if (key == "preset-workflow") c.preset_workflow = parse_bool(key, value);
    else if (key == "suggest-m") c.suggest_m = parse_bool(key, value);
    else if (key == "exhaustive") c.exhaustive = parse_bool(key, value);
    else if (key == "threads") c.threads = parse_count(key, value);
    else throw std::invalid_argument("unknown option '" + key + "'");
}

/// Flat `key=value` lines; `#` starts a comment. Errors carry the line number.
inline void read_config(std::istream& in, AnalysisConfig& c) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string_view t = io::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw io::ParseError("expected key=value", lineno);
        const std::string key(io::trim(t.substr(0, eq)));
        const std::string value(io::trim(t.substr(eq + 1)));
        if (key.empty()) throw io::ParseError("empty key", lineno);
        try {
            set_option(c, key, value);
        } catch (const std::invalid_argument& e) {
            throw io::ParseError(e.what(), lineno);
        }
    }
}

inline AnalysisConfig read_config_file(const std::string& path, AnalysisConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    try {
        read_config(in, base);
    } catch (const io::ParseError& e) {
        throw io::ParseError(path + ": " + e.what(), 0);
    }
    return base;
}

/// Rows separated by ';', positions by ',', alternatives by '|'.
inline DenseMatrix<BlockTypeSet> parse_blocks_matrix(const std::string& text) {
    std::vector<std::vector<BlockTypeSet>> rows;
    for (const auto& row : io::split(text, ';')) {
        std::vector<BlockTypeSet> cells;
        for (const auto& cell : io::split(row, ',')) cells.push_back(parse_block_type_set(cell));
        rows.push_back(std::move(cells));
    }
    const std::size_t k = rows.size();
    DenseMatrix<BlockTypeSet> m(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (rows[i].size() != k)
            throw std::invalid_argument("blocks-matrix row " + std::to_string(i + 1) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(k));
        for (std::size_t j = 0; j < k; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

/// Approach actually used: slicing implies binary unless an approach was given.
inline Approach::Kind effective_approach(const AnalysisConfig& c) {
    if (c.slice && !c.approach_set) return Approach::Kind::binary;
    return c.approach;
}

inline ModelSpec make_spec(const AnalysisConfig& c) {
    ModelSpec spec;
    const Approach::Kind kind = effective_approach(c);
    switch (kind) {
        case Approach::Kind::valued:
            if (!c.m) throw std::invalid_argument("the valued approach needs m (--m)");
            spec.approach = Approach::valued(*c.m);
            break;
        case Approach::Kind::binary: spec.approach = Approach::binary(); break;
        case Approach::Kind::hom_ss: spec.approach = Approach::hom_ss(); break;
        case Approach::Kind::hom_ad: spec.approach = Approach::hom_ad(); break;
    }
    if (c.m && kind != Approach::Kind::valued)
        throw std::invalid_argument("m is only used by the valued approach");
    if (!c.blocks_matrix.empty()) {
        if (!c.blocks.empty()) throw std::invalid_argument("give either blocks or blocks-matrix, not both");
        spec.allowed = AllowedBlocks(parse_blocks_matrix(c.blocks_matrix));
        if (spec.allowed.prespecified_k() != c.k)
            throw std::invalid_argument("blocks-matrix is " + std::to_string(spec.allowed.prespecified_k()) +
                                        "x" + std::to_string(spec.allowed.prespecified_k()) +
                                        " but k = " + std::to_string(c.k));
    } else if (!c.blocks.empty()) {
        spec.allowed = AllowedBlocks(parse_block_type_set(c.blocks));
    } else {
        spec.allowed = spec.approach.is_homogeneity() ? AllowedBlocks(BlockTypeSet{BlockType::reg})
                                                      : AllowedBlocks(BlockTypeSet{BlockType::null, BlockType::reg});
    }
    spec.f = c.f;
    spec.normalize = c.normalize;
    if (c.diagonal) spec.diagonal_policy = *c.diagonal;
    return spec;
}

/// Loads the input named by the config, then censors and slices as requested.
/// Returns (network used for fitting, network before slicing).
inline std::pair<ValuedNetwork, ValuedNetwork> prepare_network(const AnalysisConfig& c) {
    if (c.input.empty()) throw std::invalid_argument("no input given (--input)");
    const bool loops = c.diagonal && *c.diagonal != DiagonalPolicy::ignore;
    ValuedNetwork net = c.input == kBuiltinNotesBorrowing
                            ? datasets::notes_borrowing().with_diagonal_relevant(loops)
                            : io::read_network_file(c.input, c.format, loops);
    if (c.censor) {
        if (c.m && *c.censor < *c.m)
            throw std::invalid_argument("censor ceiling must not be lower than m");
        net = censor(net, *c.censor);
    }
    ValuedNetwork unsliced = net;
    if (c.slice) net = slice(net, *c.slice);
    return {net, unsliced};
}

/// Local search, exhaustive enumeration, or direct evaluation when k = 1.
inline SearchResult fit_partition(const ValuedNetwork& net, const ModelSpec& spec,
                                  const SearchConfig& sc, bool exhaustive) {
    if (sc.k == 1) {
        detail::validate_search(net, spec, 1);
        SearchResult r;
        r.best = total_inconsistency(net, Partition::canonical(std::vector<int>(net.size(), 0)), spec);
        r.optima = {r.best.partition};
        r.restarts_reaching_best = 1;
        r.evaluations = 1;
        r.basins = {Basin{r.best.partition, r.best.total, 1}};
        return r;
    }
    if (exhaustive) return exhaustive_search(net, spec, sc.k, 5'000'000, sc.optimum_epsilon);
    return local_search(net, spec, sc);
}

struct WorkflowStage {
    std::string label;
    ModelSpec spec;
    SearchResult result;
};

struct WorkflowReport {
    RowColFunction f_homogeneity = RowColFunction::mean;
    RowColFunction f_valued = RowColFunction::sum;
    std::vector<WorkflowStage> homogeneity;
    std::optional<MSuggestion> suggestion;
    std::vector<double> m_candidates;
    std::vector<WorkflowStage> valued;
    std::vector<std::string> notes;
};

/// Homogeneity first (sum of squares and absolute deviations, f-regular
/// blocks), then valued null + f-regular blocks at each m suggested by the
/// block summaries of the homogeneity solutions. `f` names either member of a
/// pairing: mean (homogeneity) goes with sum (valued); max goes with max.
inline WorkflowReport workflow_preset(const ValuedNetwork& net, const SearchConfig& sc, RowColFunction f) {
    WorkflowReport rep;
    rep.f_homogeneity = f == RowColFunction::sum ? RowColFunction::mean : f;
    rep.f_valued = f == RowColFunction::mean ? RowColFunction::sum : f;

    for (const auto kind : {Approach::Kind::hom_ss, Approach::Kind::hom_ad}) {
        ModelSpec spec;
        spec.approach = kind == Approach::Kind::hom_ss ? Approach::hom_ss() : Approach::hom_ad();
        spec.allowed = AllowedBlocks(BlockTypeSet{BlockType::reg});
        spec.f = rep.f_homogeneity;
        rep.homogeneity.push_back({std::string(to_string(kind)) + " " + std::string(to_string(spec.f)) + "-regular",
                                   spec, fit_partition(net, spec, sc, false)});
    }
    if (!net.is_nonnegative()) {
        rep.notes.emplace_back(
            "network has negative ties: valued blockmodeling is not applicable, homogeneity results only");
        return rep;
    }
    if (sc.k == 1) {
        rep.notes.emplace_back("k = 1: the single block needs no search");
    }

    std::vector<Partition> bases;
    for (const auto& stage : rep.homogeneity)
        if (std::find(bases.begin(), bases.end(), stage.result.best.partition) == bases.end())
            bases.push_back(stage.result.best.partition);
    for (const auto& p : bases) {
        MSuggestion s = suggest_m(net, p, rep.f_valued, true);
        for (double m : s.candidates)
            if (m > 0.0 && std::find(rep.m_candidates.begin(), rep.m_candidates.end(), m) == rep.m_candidates.end())
                rep.m_candidates.push_back(m);
        if (!rep.suggestion) rep.suggestion = std::move(s);
    }
    std::sort(rep.m_candidates.begin(), rep.m_candidates.end());
    if (rep.m_candidates.empty()) rep.notes.emplace_back("no positive m candidate could be derived");

    for (double m : rep.m_candidates) {
        ModelSpec spec;
        spec.approach = Approach::valued(m);
        spec.allowed = AllowedBlocks(BlockTypeSet{BlockType::null, BlockType::reg});
        spec.f = rep.f_valued;
        rep.valued.push_back({"valued null+" + std::string(to_string(spec.f)) + "-regular m=" + io::format_number(m),
                              spec, fit_partition(net, spec, sc, false)});
    }
    return rep;
}

inline nlohmann::json workflow_json(const ValuedNetwork& net, const WorkflowReport& rep) {
    nlohmann::json j;
    j["f_homogeneity"] = std::string(to_string(rep.f_homogeneity));
    j["f_valued"] = std::string(to_string(rep.f_valued));
    auto stages = [&](const std::vector<WorkflowStage>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : v) {
            nlohmann::json e = report::search_json(net, s.result);
            e["label"] = s.label;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    j["homogeneity"] = stages(rep.homogeneity);
    j["m_candidates"] = rep.m_candidates;
    if (rep.suggestion) j["m_suggestion"] = report::suggestion_json(*rep.suggestion);
    j["valued"] = stages(rep.valued);
    j["notes"] = rep.notes;
    return j;
}

inline std::string workflow_text(const ValuedNetwork& net, const WorkflowReport& rep) {
    std::ostringstream out;
    auto stage = [&](const WorkflowStage& s) {
        out << "== " << s.label << " ==\n";
        out << "total inconsistency: " << io::format_number(s.result.best.total)
            << "  (co-optimal partitions: " << s.result.optima.size() << ")\n";
        out << "image:\n" << report::image_csv(s.result.best.image);
        out << report::render_reordered(net, s.result.best.partition) << '\n';
    };
    for (const auto& s : rep.homogeneity) stage(s);
    out << "m candidates:";
    for (double m : rep.m_candidates) out << ' ' << io::format_number(m);
    out << "\n\n";
    for (const auto& s : rep.valued) stage(s);
    for (const auto& n : rep.notes) out << "note: " << n << '\n';
    return out.str();
}

inline nlohmann::json config_json(const AnalysisConfig& c) {
    nlohmann::json j;
    j["input"] = c.input;
    j["format"] = c.format == io::InputFormat::dense ? "dense" : "edges";
    j["approach"] = std::string(to_string(effective_approach(c)));
    j["blocks"] = c.blocks;
    j["blocks-matrix"] = c.blocks_matrix;
    j["f"] = std::string(to_string(c.f));
    j["m"] = c.m ? nlohmann::json(*c.m) : nlohmann::json(nullptr);
    j["k"] = c.k;
    j["restarts"] = c.restarts;
    j["seed"] = c.seed;
    j["slice"] = c.slice ? nlohmann::json(*c.slice) : nlohmann::json(nullptr);
    j["censor"] = c.censor ? nlohmann::json(*c.censor) : nlohmann::json(nullptr);
    j["normalize"] = c.normalize;
    j["diagonal"] = c.diagonal ? std::string(to_string(*c.diagonal)) : std::string("ignore");
    j["preset-workflow"] = c.preset_workflow;
    j["suggest-m"] = c.suggest_m;
    j["exhaustive"] = c.exhaustive;
    return j;
}

/// Runs one analysis and writes its report files into `c.out`. Nothing is
/// written unless the whole run succeeds. Returns a process exit status.
inline int run_analysis(const AnalysisConfig& c, std::ostream& log, std::ostream& err) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    std::map<std::string, std::string> files;
    try {
        const auto [net, unsliced] = prepare_network(c);
        SearchConfig sc;
        sc.k = c.k;
        sc.restarts = c.restarts;
        sc.seed = c.seed;
        sc.threads = c.threads;
        if (c.k > net.size())
            throw std::invalid_argument("k = " + std::to_string(c.k) + " exceeds the number of units (" +
                                        std::to_string(net.size()) + ")");

        nlohmann::json summary;
        summary["config"] = config_json(c);
        summary["units"] = net.size();

        if (c.preset_workflow) {
            const WorkflowReport rep = workflow_preset(unsliced, sc, c.f);
            summary["workflow"] = workflow_json(unsliced, rep);
            files["workflow.txt"] = workflow_text(unsliced, rep);
            const auto& first = rep.homogeneity.front().result.best;
            files["partition.csv"] = report::partition_csv(unsliced, first.partition);
            files["reordered.txt"] = report::render_reordered(unsliced, first.partition);
            log << workflow_text(unsliced, rep);
        } else {
            const ModelSpec spec = make_spec(c);
            const auto warnings = validate(spec);
            for (const auto& w : warnings) err << "warning: " << w << '\n';
            const SearchResult result = fit_partition(net, spec, sc, c.exhaustive);
            summary["warnings"] = warnings;
            summary["result"] = report::search_json(net, result);
            files["partition.csv"] = report::partition_csv(net, result.best.partition);
            files["image.csv"] = report::image_csv(result.best.image);
            files["inconsistencies.csv"] = report::inconsistency_csv(result.best.block_inconsistencies);
            files["reordered.txt"] = report::render_reordered(unsliced, result.best.partition);

            if (c.suggest_m) {
                bool regular = false;
                for (BlockTypeSet s : spec.allowed.sets())
                    for (BlockType t : s.types())
                        if (t == BlockType::rre || t == BlockType::cre || t == BlockType::reg) regular = true;
                const MSuggestion s = suggest_m(unsliced, result.best.partition, c.f, regular, c.slice);
                summary["m_suggestion"] = report::suggestion_json(s);
                summary["block_summaries"] =
                    report::summary_table_json(block_summaries(unsliced, result.best.partition, c.f));
                files["m_histogram.csv"] = report::histogram_csv(s.histogram);
            }
            log << "total inconsistency: " << io::format_number(result.best.total) << '\n'
                << "co-optimal partitions: " << result.optima.size() << '\n'
                << "image:\n" << report::image_csv(result.best.image)
                << report::render_reordered(unsliced, result.best.partition);
        }
        files["summary.json"] = summary.dump(2) + "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    const double seconds = std::chrono::duration<double>(clock::now() - t0).count();
    files["timing.json"] = nlohmann::json{{"seconds", seconds}}.dump(2) + "\n";
    try {
        std::filesystem::create_directories(c.out);
        for (const auto& [name, content] : files) {
            std::ofstream f(std::filesystem::path(c.out) / name, std::ios::binary);
            if (!(f << content)) throw std::runtime_error("cannot write " + name);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace blockmodel
