// spacetime-audit: curvature and structure audit of metric description files.
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spacetime/error.hpp"
#include "spacetime/report.hpp"

using namespace spacetime;

namespace {

struct Outcome {
    std::string out;
    std::string err;
    int status = 0;
};

Outcome process(const std::string& path, Command cmd, const std::string& check, bool json,
                const std::string& numeric) {
    Outcome o;
    try {
        ManifoldSpec spec = load_spec(path);
        std::optional<Point> pt;
        if (!numeric.empty()) pt = parse_point(numeric, spec.coords);
        AuditReport rep = run(spec, cmd, check);
        o.out = json ? render_json(rep, pt) : render_text(rep, pt);
        o.status = exit_status(rep);
    } catch (const ParseError& e) {
        o.err = path + ": " + e.what();
        o.status = 2;
    } catch (const Error& e) {
        // metric, input and domain errors are all problems with the file
        o.err = path + ": " + e.what();
        o.status = 2;
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature and structure audit for pseudo-Riemannian metrics"};
    app.require_subcommand(1);
    std::string format = "text";
    std::string numeric;
    std::vector<std::string> files;
    std::string check;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--numeric", numeric, "Evaluate at a point, e.g. x1=1,x2=1/2");
    };
    auto* analyze = app.add_subcommand("analyze", "Print curvature components");
    auto* classify = app.add_subcommand("classify", "Run the structure checks");
    auto* check_cmd = app.add_subcommand("check", "Run a single named check");
    auto* report = app.add_subcommand("report", "analyze followed by classify");
    for (auto* sub : {analyze, classify, report}) {
        add_common(sub);
        sub->add_option("files", files, "Metric description files")->required();
    }
    add_common(check_cmd);
    check_cmd->add_option("name", check, "Check name")->required();
    check_cmd->add_option("files", files, "Metric description files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Command cmd = Command::Analyze;
    if (*classify) cmd = Command::Classify;
    if (*check_cmd) cmd = Command::Check;
    if (*report) cmd = Command::Report;
    bool json = format == "json";

    std::vector<std::future<Outcome>> jobs;
    for (const auto& f : files)
        jobs.push_back(std::async(std::launch::async, process, f, cmd, check, json, numeric));

    int status = 0;
    bool many_json = json && files.size() > 1;
    if (many_json) std::cout << "[\n";
    bool first = true;
    for (auto& j : jobs) {
        Outcome o = j.get();
        if (!o.err.empty()) std::cerr << "error: " << o.err << '\n';
        if (!o.out.empty()) {
            if (many_json && !first) std::cout << ",\n";
            std::cout << o.out;
            first = false;
        }
        status = std::max(status, o.status);
    }
    if (many_json) std::cout << "]\n";
    return status;
}
