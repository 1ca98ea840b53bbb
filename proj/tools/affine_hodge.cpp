// affine-hodge: batch front-end over the ahodge library.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ahodge/report.hpp"

int main(int argc, char** argv)
{
    auto logger = spdlog::stderr_color_mt("affine-hodge");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("AFFINE_HODGE_LOG")) spdlog::cfg::helpers::load_levels(env);

    CLI::App app{"Hodge-theoretic computations on integral affine manifolds with singularities"};
    app.require_subcommand(1);
    app.fallthrough();

    ahodge::JobSpec spec;
    std::string format = "json";
    int k = -1;
    app.add_option("--input,-i", spec.input, "input JSON file")->required();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--k", k, "order of the thickening X_k (local-model)")->check(CLI::NonNegativeNumber);
    app.add_flag("--integral", spec.integral, "add integral cohomology with torsion (hodge)");
    app.add_option("--seed", spec.seed, "seed for randomized checks");
    app.add_option("--jobs,-j", spec.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--strict-simplicity", spec.strict_simplicity, "fail instead of warn when simplicity fails");

    const char* help[] = {"check the structure of a complex",
                          "facet, edge and kappa monodromy data",
                          "simplicity certificates per cell",
                          "Hodge diamond and residue operator",
                          "residue operator, moduli connection and the Aff long exact sequence",
                          "discrete Legendre transform",
                          "complex from the boundary of a reflexive polytope",
                          "graded pieces and resolution checks of a local monoid"};
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < ahodge::command_names().size(); ++i)
        subs.push_back(app.add_subcommand(ahodge::command_names()[i], help[i]));
    subs[6]->add_flag("--dual", spec.dual, "import the polar dual of the input polytope");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }
    for (auto* s : subs)
        if (s->parsed()) spec.command = s->get_name();
    spec.format = ahodge::parse_format(format);
    if (k >= 0) spec.k = k;

    ahodge::JobResult result = ahodge::run_job(spec);
    std::cout << result.rendered;
    if (result.rendered.empty() || result.rendered.back() != '\n') std::cout << '\n';
    return result.exit_code;
}
