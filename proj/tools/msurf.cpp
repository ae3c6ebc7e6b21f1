// msurf: build, solve and verify minimal surfaces from Weierstrass data.
//
//   msurf generate --name catenoid --theta 1.5707963 --out h.obj
//   msurf solve-trinoid --free-c --target-angles 1.885,1.885,2.513 --out r.json
//   msurf verify --name catenoid --checks mean-curvature,symmetry --out v.json
//
// Exit codes: 0 success, 1 domain or numerical failure, 2 usage error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <msurf/checks.hpp>
#include <msurf/io.hpp>
#include <msurf/solver.hpp>

using namespace msurf;

namespace {

constexpr int kOk = 0, kFailure = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t expect, const char* flag)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": not a number: '" + item + "'");
        }
    }
    if (out.size() != expect) throw UsageError(std::string(flag) + ": expected " + std::to_string(expect) + " comma-separated values");
    return out;
}

std::vector<std::string> split_names(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

RunConfig load_config(const std::string& path)
{
    if (path.empty()) return {};
    try {
        return run_config_from(Json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, std::string("config: ") + e.what());
    }
}

SurfaceSpecDocument load_spec(const std::string& specFile, const std::string& name)
{
    if (!specFile.empty() && !name.empty()) throw UsageError("give either --spec or --name, not both");
    if (!specFile.empty()) return parse_spec_document(read_file(specFile));
    if (name.empty()) throw UsageError("one of --spec or --name is required");
    SurfaceSpecDocument doc;
    doc.name = name;
    return doc;
}

void write_json(const std::string& path, const Json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string spec, name, out;
    double theta = 0;
    int resolution = 0;
    int precision = 0;
    std::string config;
    bool fundamental = false;
};

int run_generate(const GenerateArgs& a)
{
    RunConfig cfg = load_config(a.config);
    if (a.resolution) cfg.meshResolution = a.resolution;
    if (a.precision) cfg.precision = a.precision;
    cfg.validate();
    auto fmt = mesh_format_for(a.out);
    SurfaceSpecDocument doc = load_spec(a.spec, a.name);
    if (a.theta != 0) doc.associatePhase += a.theta;
    SurfaceData d = surface_from_document(doc);

    MeshSampling s;
    s.resolution = cfg.meshResolution;
    s.numeric = cfg.numeric();
    Mesh piece = build_fundamental_mesh(d, s);
    Mesh mesh = piece;
    long copies = 1;
    if (d.trinoid && !a.fundamental) {
        auto gens = trinoid_quarter_generators(piece, *d.trinoid);
        auto ext = reflect_extend_full(piece, gens, cfg.weldTolerance * bbox(piece.vertices).diameter());
        mesh = ext.mesh;
        copies = long(ext.elements.size());
    }
    write_file_atomic(a.out, export_mesh(mesh, fmt, cfg.precision));

    auto H = discrete_mean_curvature(piece);
    auto keep = minimality_region(d, piece);
    double maxH = 0;
    for (std::size_t i = 0; i < H.size(); ++i)
        if (H[i] && (!keep || keep(int(i)))) maxH = std::max(maxH, std::abs(*H[i]));

    Json ver;
    ver["ends"] = d.ends().size();
    ver["maxAbsH"] = maxH;
    ver["maxScaledH"] = scaled_mean_curvature(piece, keep);
    ver["copies"] = copies;
    ver["boundaryLoops"] = mesh.boundaryLoops.size();
    auto sym = symmetry_report(d, s, s.numeric);
    if (!sym.deviations.empty()) ver["symmetry"] = {{"group", sym.group}, {"deviations", sym.deviations}};

    Json side;
    side["runConfig"] = to_json(cfg);
    side["spec"] = to_json(doc);
    side["mesh"] = {{"file", std::filesystem::path(a.out).filename().string()},
                    {"vertices", mesh.vertices.size()},
                    {"faces", mesh.faces.size()}};
    side["verification"] = ver;
    write_json(a.out + ".json", side);
    std::cout << "wrote " << a.out << " (" << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces)\n";
    return kOk;
}

// ---------------------------------------------------------------- solve-trinoid

struct SolveArgs {
    std::string start, targets, out, config;
    bool freeC = false;
    double tol = 0;
    unsigned seed = 0;
    int starts = 0;
};

int run_solve(const SolveArgs& a)
{
    RunConfig cfg = load_config(a.config);
    if (a.tol > 0) cfg.simplex.targetResidual = a.tol;
    cfg.validate();
    std::optional<std::vector<double>> targets;
    if (!a.targets.empty()) {
        if (!a.freeC) throw UsageError("--target-angles needs --free-c");
        targets = parse_list(a.targets, 3, "--target-angles");
    }
    // fixed c starts from the default triple; free c from the compact symmetric solution
    std::vector<double> s = a.freeC ? std::vector<double>{-0.4391249397, -0.6983918913, -1.3619707401}
                                    : std::vector<double>{-0.5, -1.5, -3.0};
    if (!a.start.empty()) s = parse_list(a.start, 3, "--start");

    Json report;
    report["runConfig"] = to_json(cfg);
    report["mode"] = {{"freeC", a.freeC}, {"start", s}};
    if (targets) report["mode"]["targetAngles"] = *targets;

    int code = kOk;
    try {
        TrinoidParams x0;
        x0.lambda1 = s[0];
        x0.lambda2 = s[1];
        x0.lambda3 = s[2];
        x0.symmetricC = !a.freeC;
        if (!(0 > s[0] && s[0] > s[1] && s[1] > s[2]))
            throw Error(ErrorKind::InfeasibleStart, "start violates 0 > lambda1 > lambda2 > lambda3");
        x0.c = trinoid_c(s[0], s[1], s[2]);
        auto r = solve_trinoid_periods(x0, a.freeC, cfg.simplex, cfg.period(), targets);
        report["result"] = to_json(r);
        if (!r.converged) {
            report["error"] = "NoConvergence";
            code = kFailure;
        }
        std::printf("%s after %d iterations: residual %.3e, lambda = (%.10f, %.10f, %.10f), c = %.10f\n",
                    r.converged ? "converged" : "not converged", r.iterations, r.residualNorm, r.solution.lambda1,
                    r.solution.lambda2, r.solution.lambda3, r.solution.c);
    } catch (const Error& e) {
        report["error"] = e.what();
        write_json(a.out, report);
        throw;
    }
    if (a.starts > 0) {
        auto b = search_basins(a.starts, a.seed, cfg.simplex, cfg.period());
        Json basins = Json::array();
        for (auto& p : b.basins) basins.push_back(to_json(p));
        report["search"] = {{"seed", a.seed}, {"starts", a.starts}, {"runs", b.runs.size()}, {"basins", basins}};
        std::printf("multi-start search (seed %u): %zu distinct basins\n", a.seed, b.basins.size());
    }
    write_json(a.out, report);
    return code;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string spec, name, checks, out, config;
    int resolution = 0;
};

int run_verify(const VerifyArgs& a)
{
    auto names = split_names(a.checks);
    if (names.empty()) throw UsageError("--checks: at least one check is required");
    for (auto& n : names)
        if (std::find(known_checks().begin(), known_checks().end(), n) == known_checks().end())
            throw Error(ErrorKind::UnknownCheck, "unknown check '" + n + "'");
    VerifyOptions o;
    o.run = load_config(a.config);
    if (a.resolution) o.run.meshResolution = a.resolution;
    o.run.validate();
    SurfaceSpecDocument doc = load_spec(a.spec, a.name);
    SurfaceData d = surface_from_document(doc);

    Json report;
    report["runConfig"] = to_json(o.run);
    report["spec"] = to_json(doc);
    Json results = Json::array();
    bool all = true;
    for (auto& n : names) {
        auto r = run_check(n, d, o);
        all = all && r.pass;
        results.push_back(to_json(r));
        std::printf("%-22s %s%s\n", n.c_str(), r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL",
                    r.message.empty() ? "" : ("  " + r.message).c_str());
    }
    report["checks"] = results;
    report["pass"] = all;
    write_json(a.out, report);
    return all ? kOk : kFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal surfaces from Weierstrass data"};
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "mesh a surface and export it");
    gen->add_option("--spec", ga.spec, "surface spec JSON file");
    gen->add_option("--name", ga.name, "catalog name (catenoid, enneper, noidN, trinoid-genus1)");
    gen->add_option("--theta", ga.theta, "associate-family phase in radians");
    gen->add_option("--resolution", ga.resolution, "cells per chart direction");
    gen->add_option("--precision", ga.precision, "significant digits in the mesh file");
    gen->add_option("--config", ga.config, "RunConfig JSON file");
    gen->add_flag("--fundamental", ga.fundamental, "export the fundamental piece only");
    gen->add_option("--out", ga.out, "output mesh (.obj or .ply)")->required();

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve-trinoid", "solve the genus-1 trinoid period problem");
    solve->add_option("--start", sa.start, "starting lambda1,lambda2,lambda3");
    solve->add_flag("--free-c", sa.freeC, "treat c as a fourth unknown");
    solve->add_option("--target-angles", sa.targets, "end-normal angles to match (needs --free-c)");
    solve->add_option("--tol", sa.tol, "target residual");
    solve->add_option("--seed", sa.seed, "seed for --starts");
    solve->add_option("--starts", sa.starts, "additional seeded multi-start search");
    solve->add_option("--config", sa.config, "RunConfig JSON file");
    solve->add_option("--out", sa.out, "report JSON")->required();

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run named checks and report");
    ver->add_option("--spec", va.spec, "surface spec JSON file");
    ver->add_option("--name", va.name, "catalog name");
    ver->add_option("--checks", va.checks, "comma-separated: mean-curvature,conjugation-isometry,total-curvature,symmetry,end-angles")
        ->required();
    ver->add_option("--resolution", va.resolution, "mesh resolution for symmetry and end checks");
    ver->add_option("--config", va.config, "RunConfig JSON file");
    ver->add_option("--out", va.out, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) return run_generate(ga);
        if (*solve) return run_solve(sa);
        if (*ver) return run_verify(va);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::UnknownCheck ? kUsage : kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
