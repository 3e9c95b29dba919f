// bezdraw command line: RAC drawings of 1-plane embeddings, gamma-curve
// drawings of joint-box layouts, drawing verification, SVG rendering and
// test-graph generation.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "bezdraw/io.hpp"
#include "bezdraw/rac.hpp"

using namespace bezdraw;

namespace {

// exit codes: 0 pass, 1 verification failure, 2 input/usage error
constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kInputError = 2;

void print_summary(const VerificationReport &rep) {
    std::printf("crossings found: %zu\n", rep.crossings.size());
    for (const FoundCrossing &c : rep.crossings)
        std::printf("  edges %d x %d at (%.6g, %.6g), angle %.9f rad%s\n",
                    c.e1, c.e2, c.point.x, c.point.y, c.angle,
                    c.declared ? "" : "  [UNDECLARED]");
    if (!rep.min_angular_resolution.empty()) {
        double worst = 1e300;
        for (auto &[v, r] : rep.min_angular_resolution)
            worst = std::min(worst, r);
        std::printf("min angular resolution: %.9f rad\n", worst);
    }
    std::printf("max curvature: %.9g\n", rep.max_curvature);
    for (const Violation &v : rep.violations)
        std::printf("violation: %s\n", v.detail.c_str());
    std::printf("verdict: %s\n", rep.pass() ? "pass" : "fail");
}

void fill_metrics(const Drawing &d, VerificationReport &rep, int samples,
                  double min_resolution = 0.0) {
    VerifyOptions opt;
    opt.min_resolution = min_resolution;
    verify_resolution(d, rep, opt);
    rep.max_curvature = max_curvature(d, samples, &rep);
}

int verify_drawing(const Drawing &d, const std::string &mode,
                   double tol_angle, int samples,
                   const std::string &report_path,
                   double min_resolution = 0.0) {
    VerifyOptions opt;
    opt.tol_angle = tol_angle;
    opt.curvature_samples = samples;
    VerificationReport rep = census(d, opt);
    if (mode == "rac") {
        check_rac(rep, tol_angle);
    } else {
        if (!d.crossings.empty())
            rep.violations.push_back(
                {ViolationType::UnexpectedIntersection,
                 "planar mode forbids declared crossings"});
    }
    fill_metrics(d, rep, samples, min_resolution);
    print_summary(rep);
    if (!report_path.empty())
        write_json_file(report_path, report_to_json(rep));
    return rep.pass() ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"bezdraw: graph drawings with one cubic Bezier per edge"};
    app.require_subcommand(1);

    std::string input, output, svg_path, report_path, mode = "rac";
    double tol_angle = 1e-6;
    double fraction = 0.35;
    double min_resolution = 0.0;
    int samples = 1024;
    int gen_n = 20;
    uint64_t seed = 1;
    bool do_verify = false, marks = false;

    auto *rac = app.add_subcommand(
        "draw-rac", "RAC drawing of a 1-plane embedding file");
    rac->add_option("--input", input)->required();
    rac->add_option("--output", output)->required();
    rac->add_option("--svg", svg_path);
    rac->add_option("--tol-angle", tol_angle);
    rac->add_flag("--verify", do_verify);

    auto *planar = app.add_subcommand(
        "draw-planar", "gamma-curve drawing of a joint-box layout file");
    planar->add_option("--input", input)->required();
    planar->add_option("--output", output)->required();
    planar->add_option("--svg", svg_path);
    planar->add_option("--report", report_path);
    planar->add_option("--samples", samples);
    planar->add_flag("--verify", do_verify);

    auto *verify = app.add_subcommand("verify", "verify a drawing file");
    verify->add_option("--input", input)->required();
    verify->add_option("--mode", mode)
        ->check(CLI::IsMember({"rac", "planar"}));
    verify->add_option("--tol-angle", tol_angle);
    verify->add_option("--samples", samples);
    verify->add_option("--min-resolution", min_resolution,
                       "flag vertices with angular resolution below this");
    verify->add_option("--report", report_path);

    auto *render = app.add_subcommand("render", "render a drawing as SVG");
    render->add_option("--input", input)->required();
    render->add_option("--output", output)->required();
    render->add_flag("--marks", marks, "mark declared crossings");

    auto *gen = app.add_subcommand(
        "gen", "generate a 1-plane embedding with kite crossings");
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--crossing-fraction", fraction);
    gen->add_option("--seed", seed);
    gen->add_option("--output", output)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (rac->parsed()) {
            OnePlaneEmbedding emb = load_embedding(read_json_file(input));
            RacResult r = draw_rac(emb);
            write_json_file(output, save_drawing(r.drawing));
            if (!svg_path.empty())
                write_svg_file(svg_path, r.drawing, true);
            if (do_verify) {
                VerificationReport rep = census(r.drawing);
                check_rac(rep, tol_angle);
                fill_metrics(r.drawing, rep, samples);
                print_summary(rep);
                return rep.pass() ? kOk : kVerifyFail;
            }
            return kOk;
        }
        if (planar->parsed()) {
            JointBoxDrawing jbd = load_jointbox(read_json_file(input));
            Drawing d = draw_planar(jbd);
            write_json_file(output, save_drawing(d));
            if (!svg_path.empty()) write_svg_file(svg_path, d, false);
            if (do_verify || !report_path.empty())
                return verify_drawing(d, "planar", tol_angle, samples,
                                      report_path);
            return kOk;
        }
        if (verify->parsed()) {
            Drawing d = load_drawing(read_json_file(input));
            return verify_drawing(d, mode, tol_angle, samples, report_path,
                                  min_resolution);
        }
        if (render->parsed()) {
            Drawing d = load_drawing(read_json_file(input));
            write_svg_file(output, d, marks);
            return kOk;
        }
        if (gen->parsed()) {
            OnePlaneEmbedding emb = gen_one_planar(gen_n, fraction, seed);
            write_json_file(output, save_embedding(emb));
            return kOk;
        }
    } catch (const StructureError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kInputError;
    }
    return kInputError;
}
