// Command-line front end: search, enumerate, classify, construct, verify.
//
// Exit codes: 0 found/verified, 1 proven-absent/not-magic, 2 node budget
// exhausted, 64 usage error. Graph data goes to stdout (or --output);
// diagnostics and statistics go to stderr so pipelines stay clean.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "distmagic/distmagic.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitAbsent = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

int default_jobs() {
    if (const char* env = std::getenv("DISTMAGIC_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

std::ostream& output_stream(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

void emit_graph(std::ostream& os, const distmagic::Graph& g, distmagic::GraphFormat fmt) {
    const std::string text = distmagic::encode(g, fmt);
    os << text;
    if (fmt != distmagic::GraphFormat::dot) os << "\n";
}

void emit_stats(const distmagic::SearchStats& s) {
    nlohmann::ordered_json j;
    j["nodes"] = s.nodes;
    j["prunes_symmetry"] = s.prunes_symmetry;
    j["prunes_weight"] = s.prunes_weight;
    j["witnesses"] = s.witnesses;
    std::cerr << j.dump() << "\n";
}

std::string read_all(std::istream& is) {
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct Args {
    long long n = 0, k = 0;
    bool all = false;
    int regular = 0;
    std::string format = "g6";
    int jobs = default_jobs();
    std::optional<std::uint64_t> budget;
    std::string output;
    long long kmin = -1, kmax = -1;
    bool no_witness = false;
    std::string family;
    std::vector<long long> params;
    std::string base_path;
    std::string input_path;
};

distmagic::GraphFormat require_format(const std::string& name) {
    const auto fmt = distmagic::parse_format(name);
    if (!fmt) throw CLI::ValidationError("--format", "unknown format '" + name + "'");
    return *fmt;
}

int run_search(const Args& a) {
    const auto fmt = require_format(a.format);
    distmagic::SearchOptions opt;
    opt.jobs = a.jobs;
    opt.node_budget = a.budget;
    std::ofstream file;
    std::ostream& os = output_stream(a.output, file);

    distmagic::SearchOutcome out;
    if (a.regular > 0) {
        out = distmagic::search_regular(static_cast<int>(a.n), a.k, a.regular, opt);
    } else if (a.all) {
        std::size_t emitted = 0;
        const std::function<void(const distmagic::Graph&)> sink =
            [&](const distmagic::Graph& g) {
                emit_graph(os, g, fmt);
                ++emitted;
            };
        out = distmagic::enumerate_labeled(static_cast<int>(a.n), a.k, sink, opt);
        emit_stats(out.stats);
        if (out.status == distmagic::SearchStatus::budget_exhausted) {
            std::cerr << "budget exhausted after " << out.stats.nodes << " nodes\n";
            return kExitBudget;
        }
        if (emitted == 0) {
            std::cerr << "none exists (exhaustive)\n";
            return kExitAbsent;
        }
        return kExitFound;
    } else {
        out = distmagic::find_first(static_cast<int>(a.n), a.k, opt);
    }
    emit_stats(out.stats);
    if (out.status == distmagic::SearchStatus::budget_exhausted) {
        std::cerr << "budget exhausted after " << out.stats.nodes << " nodes\n";
        return kExitBudget;
    }
    if (out.witnesses.empty()) {
        std::cerr << "none exists (exhaustive)\n";
        return kExitAbsent;
    }
    for (const auto& g : out.witnesses) emit_graph(os, g, fmt);
    return kExitFound;
}

int run_enumerate(const Args& a) {
    const auto fmt = require_format(a.format);
    distmagic::SearchOptions opt;
    opt.jobs = a.jobs;
    std::ofstream file;
    std::ostream& os = output_stream(a.output, file);
    const distmagic::ClassCounts counts =
        distmagic::count_distance_magic(static_cast<int>(a.n), opt, a.kmin, a.kmax);
    if (fmt == distmagic::GraphFormat::graph6)
        for (const auto& line : counts.canonical_g6) os << line << "\n";
    else
        for (const auto& g : counts.representatives) emit_graph(os, g, fmt);
    nlohmann::ordered_json j;
    j["n"] = counts.n;
    j["total_classes"] = counts.total_classes;
    auto& per_k = j["per_k"] = nlohmann::ordered_json::object();
    for (const auto& [k, c] : counts.per_k) per_k[std::to_string(k)] = c;
    std::cerr << j.dump() << "\n";
    return kExitFound;
}

int run_classify(const Args& a) {
    const auto fmt = require_format(a.format);
    distmagic::ClassifyOptions opt;
    opt.make_witness = !a.no_witness;
    opt.jobs = a.jobs;
    if (a.budget) opt.search_budget = *a.budget;
    const distmagic::MagicClassification result = distmagic::classify(a.k, opt);
    if (result.verdict == distmagic::Verdict::not_magic) {
        std::cout << "not-magic\n";
        return kExitAbsent;
    }
    using Kind = distmagic::WitnessStrategy::Kind;
    std::string line = "magic";
    if (result.strategy.kind == Kind::family) {
        line += ", family " + result.strategy.family;
        if (result.strategy.family == "tc4" || result.strategy.family == "p3tc4" ||
            result.strategy.family == "4t2")
            line += ", t=" + std::to_string(result.strategy.params.at(0));
    } else if (result.strategy.kind == Kind::search && result.witness) {
        line += ", search witness at n=" + std::to_string(result.strategy.order);
    } else {
        line += ", " + result.strategy.note;
    }
    std::cout << line << "\n";
    if (result.witness) {
        std::ofstream file;
        std::ostream& os = output_stream(a.output, file);
        emit_graph(os, result.witness->graph, fmt);
    }
    return kExitFound;
}

distmagic::Graph load_graph(const std::string& path, const std::string& format_name) {
    std::string text;
    if (path.empty() || path == "-") {
        text = read_all(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open input file: " + path);
        text = read_all(in);
    }
    text = strip(text);
    if (format_name == "json" || (format_name == "auto" && !text.empty() && text.front() == '{'))
        return distmagic::from_adjacency_json(text);
    if (format_name == "dot") throw CLI::ValidationError("--format", "DOT is emit-only");
    return distmagic::from_graph6(text);
}

int run_construct(const Args& a) {
    const auto fmt = require_format(a.format);
    auto need = [&](std::size_t count) {
        if (a.params.size() != count)
            throw CLI::ValidationError("params", "family '" + a.family + "' expects " +
                                                     std::to_string(count) + " parameter(s)");
    };
    distmagic::Graph g;
    if (a.family == "tc4") {
        need(1);
        g = distmagic::construct_tc4(a.params[0]).graph;
    } else if (a.family == "p3tc4") {
        need(1);
        g = distmagic::construct_p3_tc4(a.params[0]).graph;
    } else if (a.family == "4t2") {
        need(1);
        g = distmagic::construct_4t_plus_2(a.params[0]).graph;
    } else if (a.family == "primepower") {
        need(2);
        g = distmagic::construct_prime_power(a.params[0], static_cast<int>(a.params[1])).graph;
    } else if (a.family == "circulant") {
        if (a.params.size() < 1)
            throw CLI::ValidationError("params", "circulant expects m followed by offsets");
        std::vector<int> offsets(a.params.begin() + 1, a.params.end());
        g = distmagic::circulant(static_cast<int>(a.params[0]), offsets);
    } else if (a.family == "blowup") {
        need(1);
        const distmagic::Graph base = load_graph(a.base_path, "auto");
        g = distmagic::lexicographic_blowup(base, a.params[0]).graph;
    } else {
        throw CLI::ValidationError(
            "family", "unknown family '" + a.family +
                          "' (expected tc4, p3tc4, 4t2, primepower, circulant, or blowup)");
    }
    std::ofstream file;
    std::ostream& os = output_stream(a.output, file);
    emit_graph(os, g, fmt);
    return kExitFound;
}

int run_verify(const Args& a) {
    distmagic::Graph g;
    try {
        g = load_graph(a.input_path, a.format);
    } catch (const distmagic::parse_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitAbsent;
    }
    if (g.order() == 0) {
        std::cerr << "empty graph has no magic constant\n";
        return kExitAbsent;
    }
    const auto k = distmagic::verify_identity_magic(g);
    if (k) {
        std::cout << *k << "\n";
        return kExitFound;
    }
    const auto id = distmagic::Labeling::identity(g.order());
    const long long w1 = distmagic::vertex_weight(g, id, 1);
    for (int v = 2; v <= g.order(); ++v) {
        const long long wv = distmagic::vertex_weight(g, id, v);
        if (wv != w1) {
            std::cerr << "not distance magic: vertex " << v << " has weight " << wv
                      << " but vertex 1 has weight " << w1 << "\n";
            break;
        }
    }
    return kExitAbsent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance magic graph toolkit"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", a.format, "output format: g6, dot, or json");
        sub->add_option("--jobs", a.jobs, "worker count (env DISTMAGIC_JOBS)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output", a.output, "write graph data to a file instead of stdout");
    };

    CLI::App* search = app.add_subcommand("search", "find identity-labeled witnesses for (n, k)");
    search->add_option("n", a.n, "vertex count")->required()->check(CLI::PositiveNumber);
    search->add_option("k", a.k, "magic constant")->required()->check(CLI::PositiveNumber);
    bool first_flag = false;
    search->add_flag("--first", first_flag, "stop at the first witness (default)");
    search->add_flag("--all", a.all, "enumerate every labeled witness");
    search->add_option("--regular", a.regular, "restrict to r-regular witnesses")
        ->check(CLI::PositiveNumber);
    std::uint64_t budget_value = 0;
    CLI::Option* budget_opt =
        search->add_option("--budget", budget_value, "node-expansion budget")
            ->check(CLI::PositiveNumber);
    add_common(search);

    CLI::App* enumerate = app.add_subcommand("enumerate", "catalog isomorphism classes of order n");
    enumerate->add_option("n", a.n, "vertex count")->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--kmin", a.kmin, "smallest magic constant to try");
    enumerate->add_option("--kmax", a.kmax, "largest magic constant to try");
    add_common(enumerate);

    CLI::App* classify = app.add_subcommand("classify", "decide whether k is a magic constant");
    classify->add_option("k", a.k, "candidate constant")->required()->check(CLI::PositiveNumber);
    classify->add_flag("--no-witness", a.no_witness, "verdict only, skip witness construction");
    CLI::Option* classify_budget =
        classify->add_option("--budget", budget_value, "node budget for witness hunts")
            ->check(CLI::PositiveNumber);
    add_common(classify);

    CLI::App* construct = app.add_subcommand("construct", "build a closed-form family witness");
    construct->add_option("family", a.family,
                          "tc4, p3tc4, 4t2, primepower, circulant, or blowup")
        ->required();
    construct->add_option("params", a.params, "family parameters");
    construct->add_option("--base", a.base_path, "base graph file for blowup ('-' = stdin)");
    add_common(construct);

    CLI::App* verify = app.add_subcommand("verify", "report the identity magic constant of a graph");
    verify->add_option("file", a.input_path, "input file (default stdin)");
    std::string verify_format = "auto";
    verify->add_option("--format", verify_format, "input format: g6, json, or auto");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (budget_opt->count() || classify_budget->count()) a.budget = budget_value;
    if (search->parsed() && a.all && a.regular > 0) {
        std::cerr << "--all cannot be combined with --regular\n";
        return kExitUsage;
    }
    if (search->parsed() && a.all && first_flag) {
        std::cerr << "--first and --all are mutually exclusive\n";
        return kExitUsage;
    }

    try {
        if (search->parsed()) return run_search(a);
        if (enumerate->parsed()) return run_enumerate(a);
        if (classify->parsed()) return run_classify(a);
        if (construct->parsed()) return run_construct(a);
        if (verify->parsed()) {
            a.format = verify_format;
            return run_verify(a);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const distmagic::capacity_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitAbsent;
    }
    return kExitUsage;
}
