#include "l3cvrp/bnc.hpp"
#include "l3cvrp/instance_io.hpp"
#include "l3cvrp/solution_check.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

using namespace l3cvrp;

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitTimeLimit = 1;
constexpr int kExitParse = 2;
constexpr int kExitOracle = 3;
constexpr int kExitNoIncumbent = 4;

/// Keys accepted by --set.
std::map<std::string, std::function<void(BncConfig&, const std::string&)>> setters()
{
    auto real = [](auto member) {
        return [member](BncConfig& c, const std::string& v) { member(c) = std::stod(v); };
    };
    auto whole = [](auto member) {
        return [member](BncConfig& c, const std::string& v) { member(c) = std::stol(v); };
    };
    return {
        {"n_all", whole([](BncConfig& c) -> long& { return c.n_all; })},
        {"n_sep", whole([](BncConfig& c) -> long& { return c.n_sep; })},
        {"n_sp", whole([](BncConfig& c) -> long& { return c.n_sp; })},
        {"static_pair_rows", whole([](BncConfig& c) -> int& { return c.static_pair_rows; })},
        {"max_cut_rounds", whole([](BncConfig& c) -> int& { return c.max_cut_rounds; })},
        {"limited_seconds", real([](BncConfig& c) -> double& { return c.pipeline.limited_seconds; })},
        {"set_check_seconds", real([](BncConfig& c) -> double& { return c.pipeline.set_check_seconds; })},
        {"sp.max_nodes", whole([](BncConfig& c) -> long& { return c.sp.max_nodes; })},
        {"heuristic.max_seconds", real([](BncConfig& c) -> double& { return c.pipeline.heuristic.max_seconds; })},
        {"heuristic.max_perturbations",
         whole([](BncConfig& c) -> int& { return c.pipeline.heuristic.max_perturbations; })},
        {"heuristic.enumeration_threshold",
         whole([](BncConfig& c) -> int& { return c.pipeline.heuristic.enumeration_threshold; })},
        {"heuristic.lifo_tolerance", whole([](BncConfig& c) -> int& { return c.pipeline.heuristic.lifo_tolerance; })},
        {"heuristic.lifo_eval", whole([](BncConfig& c) -> int& { return c.pipeline.heuristic.lifo_eval; })},
        {"heuristic.perturbation_distance",
         whole([](BncConfig& c) -> int& { return c.pipeline.heuristic.perturbation_distance; })},
    };
}

std::string env_name(const std::string& key)
{
    std::string out = "L3CVRP_";
    for (char ch : key)
        out += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

void apply_override(BncConfig& config, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("--set", "expected key=value, got " + assignment);
    const std::string key = assignment.substr(0, eq);
    const auto all = setters();
    const auto it = all.find(key);
    if (it == all.end())
        throw CLI::ValidationError("--set", "unknown key " + key);
    try
    {
        it->second(config, assignment.substr(eq + 1));
    }
    catch (const std::logic_error&)
    {
        throw CLI::ValidationError("--set", "bad value for " + key);
    }
}

std::string summary(const SolutionReport& r)
{
    char buf[512];
    const auto& s = r.stats;
    if (r.has_incumbent)
        std::snprintf(buf, sizeof buf,
                      "instance=%s variant=%s status=%s obj=%.4f LB=%.4f gap=%.4f%% t=%.2f N=%ld t_Int=%.2f "
                      "t_Frac=%.2f t_SP=%.2f",
                      r.instance.c_str(), r.variant.c_str(), to_string(r.status).c_str(), r.objective, r.lower_bound,
                      100.0 * r.gap, s.t_total, s.nodes, s.t_int, s.t_frac, s.t_sp);
    else
        std::snprintf(buf, sizeof buf,
                      "instance=%s variant=%s status=%s obj=- LB=%.4f gap=- t=%.2f N=%ld t_Int=%.2f t_Frac=%.2f "
                      "t_SP=%.2f",
                      r.instance.c_str(), r.variant.c_str(), to_string(r.status).c_str(), r.lower_bound, s.t_total,
                      s.nodes, s.t_int, s.t_frac, s.t_sp);
    return buf;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Branch-and-cut for vehicle routing with three-dimensional loading"};
    app.require_subcommand(1);

    std::string instancePath, outputPath, variantText = "all", mode = "complete", memo = "on";
    double timeLimit = 28800.0, supportRatio = 0.75;
    std::uint64_t seed = 0;
    int threads = 8;
    std::vector<std::string> overrides;

    auto* solveCmd = app.add_subcommand("solve", "Solve an instance");
    solveCmd->add_option("--instance", instancePath, "Instance file")->required()->check(CLI::ExistingFile);
    solveCmd->add_option("--variant", variantText, "all, no-fragility, no-lifo, no-support, loading-only or cvrp")
        ->envname("L3CVRP_VARIANT")
        ->check(CLI::IsMember({"all", "no-fragility", "no-lifo", "no-support", "loading-only", "cvrp"}));
    solveCmd->add_option("--mode", mode, "complete or basic")
        ->envname("L3CVRP_MODE")
        ->check(CLI::IsMember({"complete", "basic"}));
    solveCmd->add_option("--time-limit", timeLimit, "Seconds")->envname("L3CVRP_TIME_LIMIT")->check(CLI::NonNegativeNumber);
    solveCmd->add_option("--seed", seed)->envname("L3CVRP_SEED");
    solveCmd->add_option("--threads", threads)->envname("L3CVRP_THREADS")->check(CLI::PositiveNumber);
    solveCmd->add_option("--support-ratio", supportRatio)
        ->envname("L3CVRP_SUPPORT_RATIO")
        ->check(CLI::Range(0.0, 1.0));
    solveCmd->add_option("--memo", memo, "on or off")->envname("L3CVRP_MEMO")->check(CLI::IsMember({"on", "off"}));
    solveCmd->add_option("--output", outputPath, "Solution file");
    solveCmd->add_option("--set", overrides, "key=value, repeatable");

    std::string solutionPath, checkInstance, checkVariant;
    double checkRatio = 0.75;
    auto* validateCmd = app.add_subcommand("validate", "Check a solution file against an instance");
    validateCmd->add_option("--solution", solutionPath)->required()->check(CLI::ExistingFile);
    validateCmd->add_option("--instance", checkInstance)->required()->check(CLI::ExistingFile);
    validateCmd->add_option("--variant", checkVariant, "Defaults to the variant declared in the solution");
    validateCmd->add_option("--support-ratio", checkRatio)->envname("L3CVRP_SUPPORT_RATIO")->check(CLI::Range(0.0, 1.0));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitParse;
    }

    if (*solveCmd)
    {
        BncConfig config;
        config.time_limit = timeLimit;
        config.seed = seed;
        config.threads = threads;
        config.support_ratio = supportRatio;
        config.complete = mode == "complete";
        config.memo = memo == "on";
        try
        {
            for (const auto& [key, set] : setters())
                if (const char* v = std::getenv(env_name(key).c_str()))
                    apply_override(config, key + "=" + v);
            for (const auto& o : overrides)
                apply_override(config, o);
        }
        catch (const CLI::ParseError& e)
        {
            app.exit(e);
            return kExitParse;
        }

        Instance inst;
        try
        {
            inst = read_instance_file(instancePath);
        }
        catch (const std::exception& e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return kExitParse;
        }

        SolutionReport report;
        try
        {
            report = solve(inst, *parse_variant(variantText), config);
        }
        catch (const std::exception& e)
        {
            std::cerr << "solver failure: " << e.what() << "\n";
            return kExitOracle;
        }
        std::cout << summary(report) << std::endl;
        if (!outputPath.empty())
        {
            std::ofstream out(outputPath);
            out << write_solution(report);
            if (!out)
            {
                std::cerr << "error: cannot write " << outputPath << "\n";
                return kExitOracle;
            }
        }
        if (!report.has_incumbent)
            return kExitNoIncumbent;
        return report.status == SolveStatus::Optimal ? kExitOptimal : kExitTimeLimit;
    }

    Instance inst;
    SolutionReport report;
    try
    {
        inst = read_instance_file(checkInstance);
        report = parse_solution(read_text_file(solutionPath));
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    const std::string declared = checkVariant.empty() ? report.variant : checkVariant;
    const auto variant = parse_variant(declared);
    if (!variant)
    {
        std::cerr << "error: unknown variant " << declared << "\n";
        return kExitParse;
    }
    const auto issues = check_solution(inst, report, *variant, checkRatio);
    for (const auto& i : issues)
        std::cout << "violation kind=" << i.kind << " route=" << i.route << " " << i.detail << "\n";
    std::cout << (issues.empty() ? "valid" : "invalid") << " routes=" << report.routes.size()
              << " violations=" << issues.size() << "\n";
    return issues.empty() ? 0 : 1;
}
