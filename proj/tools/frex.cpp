#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "frex/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"frex - pseudo-spectral lab for the fractional heat exchanger system"};
    app.require_subcommand(1);

    std::string config_path;
    frex::commands::Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment configuration file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides [output])");
        sub->add_option("--workers", opt.workers, "sweep worker count (overrides [lifespan])");
        sub->add_flag("--no-svg", opt.no_svg, "skip SVG figures");
    };

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const frex::config::ExperimentConfig&, const frex::commands::Options&);
    };
    const Entry entries[] = {
        {"linear-verify", "linear propagation invariants and profile errors",
         frex::commands::linear_verify},
        {"simulate", "integrate the semilinear system and record norms",
         frex::commands::simulate_cmd},
        {"decay", "fit large-time decay rates against theory", frex::commands::decay},
        {"profile", "distance to the asymptotic profile and two-sided L2 check",
         frex::commands::profile},
        {"lifespan-sweep", "epsilon sweep with blow-up detection and lifespan fits",
         frex::commands::lifespan_sweep},
        {"kernel-scaling", "self-similar scaling of the diffusion kernel",
         frex::commands::kernel_scaling},
    };

    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub);
        sub->callback([&, run = e.run]() {
            frex::config::ExperimentConfig cfg = frex::config::parse_config_file(config_path);
            std::exit(run(cfg, opt));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
