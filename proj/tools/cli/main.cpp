#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

using namespace ars3d;
using namespace ars3d::cli;

namespace {

void add_sampling(CLI::App* cmd, SamplingFlags& f) {
    cmd->add_option("--samples", f.samples, "sampled points")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "sampler seed");
    cmd->add_option("--box", f.box, "sampling box: |t| <= box, |v| <= box")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Almost-Riemannian structures on solvable 3D Lie groups"};
    app.require_subcommand(1);

    std::string path;
    Streams io{std::cout, std::cerr};
    int code = kOk;

    auto* validate = app.add_subcommand("validate", "check the defining conditions of a document");
    validate->add_option("path", path, "ARS document")->required();
    validate->callback([&] { code = cmd_validate(path, io); });

    auto* classify = app.add_subcommand("classify", "canonical class of a rank-two structure");
    classify->add_option("path", path, "ARS document")->required();
    classify->callback([&] { code = cmd_classify(path, io); });

    LocusFlags locus_flags;
    std::string window = "-2,2,-2,2";
    std::string out_path;
    auto* locus = app.add_subcommand("locus", "export a t-slice of the singular locus as CSV");
    locus->add_option("path", path, "ARS document")->required();
    locus->add_option("--t", locus_flags.t, "slice height");
    locus->add_option("--window", window, "v1min,v1max,v2min,v2max");
    locus->add_option("--res", locus_flags.resolution, "grid resolution per axis");
    locus->add_option("--out", out_path, "CSV output path (stdout if omitted)");
    locus->callback([&] {
        try {
            locus_flags.window = parse_window(window);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << '\n';
            code = kDomain;
            return;
        }
        if (!out_path.empty()) locus_flags.out_path = out_path;
        code = cmd_locus(path, locus_flags, io);
    });

    SamplingFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "check a candidate_map for isometry");
    verify->add_option("path", path, "ARS document with candidate_map")->required();
    add_sampling(verify, verify_flags);
    verify->callback([&] { code = cmd_verify(path, verify_flags, io); });

    DemoFlags demo_flags;
    auto* demo = app.add_subcommand("demo-counterexample", "rank-one structure with a non-automorphism isometry");
    add_sampling(demo, demo_flags.sampling);
    demo->add_flag("--rank-two-field", demo_flags.rank_two_field, "replace the field by a rank-two one");
    demo->callback([&] { code = cmd_demo_counterexample(demo_flags, io); });

    double t = 0.0, s = 0.0;
    std::vector<double> v{0.0, 0.0};
    std::vector<double> z{0.0, 0.0, 0.0};
    auto* norm = app.add_subcommand("norm", "almost-Riemannian norm of a tangent vector");
    norm->add_option("path", path, "ARS document")->required();
    norm->add_option("--t", t, "base point t");
    norm->add_option("--v", v, "base point v")->expected(2)->delimiter(',');
    norm->add_option("--z", z, "tangent (dt, dv1, dv2)")->required()->expected(3)->delimiter(',');
    norm->callback([&] { code = cmd_norm(path, {t, {v[0], v[1]}}, {z[0], z[1], z[2]}, io); });

    auto* flow = app.add_subcommand("flow", "flow of the linear field");
    flow->add_option("path", path, "ARS document")->required();
    flow->add_option("--t", t, "base point t");
    flow->add_option("--v", v, "base point v")->expected(2)->delimiter(',');
    flow->add_option("--s", s, "flow time")->required();
    flow->callback([&] { code = cmd_flow(path, {t, {v[0], v[1]}}, s, io); });

    try {
        apply_tolerance_env();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    return code;
}
