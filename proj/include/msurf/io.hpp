#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "mesh.hpp"
#include "periods.hpp"
#include "solver.hpp"

namespace msurf {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- surface spec documents

struct PolynomialPair {
    std::vector<Complex> numerator{Complex(1)}, denominator{Complex(1)}; // ascending powers
};

struct MarkedPointSpec {
    std::optional<Complex> at;
    PointKind kind = PointKind::End;
};

struct SurfaceSpecDocument {
    int schemaVersion = 1;
    std::string kind = "catalog-name"; // or "raw"
    std::string name;                  // catalog-name only
    PolynomialPair gSquared, gEta;     // raw only
    BranchState branchSeed{1, 1};
    Complex basePoint = 1;
    std::vector<MarkedPointSpec> markedPoints;
    std::string domain = "plane";
    double associatePhase = 0;
    std::optional<TrinoidParams> trinoidParams;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& field, const std::string& msg)
{
    throw Error(ErrorKind::SchemaError, field + ": " + msg);
}

inline const Json& field(const Json& j, const std::string& path, const char* key)
{
    if (!j.contains(key)) schema_error(path + key, "missing");
    return j.at(key);
}

inline double number(const Json& j, const std::string& path)
{
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

inline Complex complex_from(const Json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        schema_error(path, "expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_to(Complex z) { return Json::array({z.real(), z.imag()}); }

inline std::vector<Complex> coeffs_from(const Json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty list of [re, im]");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline const char* kind_name(PointKind k)
{
    switch (k) {
    case PointKind::End: return "end";
    case PointKind::BranchPoint: return "branch-point";
    case PointKind::BoundaryMarker: return "boundary-marker";
    }
    return "end";
}

inline PointKind kind_from(const Json& j, const std::string& path)
{
    if (j == "end") return PointKind::End;
    if (j == "branch-point") return PointKind::BranchPoint;
    if (j == "boundary-marker") return PointKind::BoundaryMarker;
    schema_error(path, "expected end, branch-point or boundary-marker");
}

inline void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    for (auto& [k, v] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || k == a;
        if (!ok) schema_error(path + k, "unknown field");
    }
}

} // namespace detail

inline Json to_json(const TrinoidParams& p)
{
    return Json{{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"lambda3", p.lambda3}, {"c", p.c}, {"symmetricC", p.symmetricC}};
}

inline TrinoidParams trinoid_params_from(const Json& j, const std::string& path = "trinoidParams.")
{
    using namespace detail;
    if (!j.is_object()) schema_error(path, "expected an object");
    check_keys(j, path, {"lambda1", "lambda2", "lambda3", "c", "symmetricC"});
    TrinoidParams p;
    p.lambda1 = number(field(j, path, "lambda1"), path + "lambda1");
    p.lambda2 = number(field(j, path, "lambda2"), path + "lambda2");
    p.lambda3 = number(field(j, path, "lambda3"), path + "lambda3");
    p.symmetricC = j.value("symmetricC", true);
    try {
        if (p.symmetricC) {
            p.c = trinoid_c(p.lambda1, p.lambda2, p.lambda3);
            if (j.contains("c")) {
                double c = number(j["c"], path + "c");
                if (std::abs(c - p.c) > 1e-12 * std::abs(p.c))
                    throw Error(ErrorKind::InvariantViolation, path + "c disagrees with the symmetric value");
            }
        } else {
            p.c = number(field(j, path, "c"), path + "c");
        }
        validate(p);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::OrderingViolation)
            throw Error(ErrorKind::InvariantViolation, "trinoid parameters violate 0 > lambda1 > lambda2 > lambda3");
        throw;
    }
    return p;
}

inline Json to_json(const SurfaceSpecDocument& d)
{
    using detail::complex_to;
    Json j;
    j["schemaVersion"] = d.schemaVersion;
    j["kind"] = d.kind;
    if (d.kind == "catalog-name") {
        j["name"] = d.name;
    } else {
        auto poly = [](const PolynomialPair& p) {
            Json n = Json::array(), m = Json::array();
            for (auto c : p.numerator) n.push_back(complex_to(c));
            for (auto c : p.denominator) m.push_back(complex_to(c));
            return Json{{"numerator", n}, {"denominator", m}};
        };
        j["gSquared"] = poly(d.gSquared);
        j["gEta"] = poly(d.gEta);
        j["branchSeed"] = {{"at", complex_to(d.branchSeed.at)}, {"g", complex_to(d.branchSeed.g)}};
        j["basePoint"] = complex_to(d.basePoint);
        Json marks = Json::array();
        for (auto& m : d.markedPoints)
            marks.push_back({{"at", m.at ? complex_to(*m.at) : Json(nullptr)}, {"kind", detail::kind_name(m.kind)}});
        j["markedPoints"] = marks;
        j["domain"] = d.domain;
    }
    j["associatePhase"] = d.associatePhase;
    if (d.trinoidParams) j["trinoidParams"] = to_json(*d.trinoidParams);
    return j;
}

inline SurfaceSpecDocument spec_document_from(const Json& j)
{
    using namespace detail;
    if (!j.is_object()) schema_error("(root)", "expected an object");
    SurfaceSpecDocument d;
    if (j.contains("schemaVersion")) {
        auto& v = j["schemaVersion"];
        if (!v.is_number_integer() || v.get<int>() != 1) schema_error("schemaVersion", "only version 1 is supported");
    }
    auto& kind = field(j, "", "kind");
    if (!kind.is_string() || (kind != "catalog-name" && kind != "raw")) schema_error("kind", "expected catalog-name or raw");
    d.kind = kind.get<std::string>();
    if (j.contains("associatePhase")) d.associatePhase = number(j["associatePhase"], "associatePhase");
    if (j.contains("trinoidParams") && !j["trinoidParams"].is_null()) d.trinoidParams = trinoid_params_from(j["trinoidParams"]);
    if (d.kind == "catalog-name") {
        check_keys(j, "", {"schemaVersion", "kind", "name", "associatePhase", "trinoidParams"});
        auto& n = field(j, "", "name");
        if (!n.is_string()) schema_error("name", "expected a string");
        d.name = n.get<std::string>();
        return d;
    }
    check_keys(j, "", {"schemaVersion", "kind", "gSquared", "gEta", "branchSeed", "basePoint", "markedPoints", "domain",
                       "associatePhase", "trinoidParams"});
    for (auto [key, dst] : {std::pair{"gSquared", &d.gSquared}, std::pair{"gEta", &d.gEta}}) {
        auto& f = field(j, "", key);
        std::string p = std::string(key) + ".";
        if (!f.is_object()) schema_error(key, "expected {numerator, denominator}");
        dst->numerator = coeffs_from(field(f, p, "numerator"), p + "numerator");
        dst->denominator = f.contains("denominator") ? coeffs_from(f["denominator"], p + "denominator") : std::vector<Complex>{1};
    }
    auto& seed = field(j, "", "branchSeed");
    d.branchSeed = {complex_from(field(seed, "branchSeed.", "at"), "branchSeed.at"),
                    complex_from(field(seed, "branchSeed.", "g"), "branchSeed.g")};
    d.basePoint = j.contains("basePoint") ? complex_from(j["basePoint"], "basePoint") : d.branchSeed.at;
    if (j.contains("markedPoints")) {
        auto& ms = j["markedPoints"];
        if (!ms.is_array()) schema_error("markedPoints", "expected a list");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            std::string p = "markedPoints[" + std::to_string(i) + "].";
            MarkedPointSpec m;
            auto& at = field(ms[i], p, "at");
            if (!at.is_null()) m.at = complex_from(at, p + "at");
            m.kind = kind_from(field(ms[i], p, "kind"), p + "kind");
            d.markedPoints.push_back(m);
        }
    }
    if (j.contains("domain")) {
        auto& dm = j["domain"];
        if (dm != "plane" && dm != "upper-half-plane") schema_error("domain", "expected plane or upper-half-plane");
        d.domain = dm.get<std::string>();
    }
    return d;
}

inline SurfaceSpecDocument parse_spec_document(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
    }
    return spec_document_from(j);
}

inline std::string serialize_spec_document(const SurfaceSpecDocument& d) { return to_json(d).dump(2) + "\n"; }

inline SurfaceData surface_from_document(const SurfaceSpecDocument& doc)
{
    SurfaceData d;
    if (doc.kind == "catalog-name") {
        d = make_named(doc.name, doc.trinoidParams);
    } else {
        d.gSquared = RationalFn(Polynomial(doc.gSquared.numerator), Polynomial(doc.gSquared.denominator));
        d.gEta = RationalFn(Polynomial(doc.gEta.numerator), Polynomial(doc.gEta.denominator));
        d.branchSeed = doc.branchSeed;
        d.basePoint = doc.basePoint;
        d.domain = doc.domain == "upper-half-plane" ? Domain::UpperHalfPlane : Domain::Plane;
        for (auto& m : doc.markedPoints) d.markedPoints.push_back({m.at, m.kind});
        if (doc.trinoidParams) d.trinoid = doc.trinoidParams;
        Complex f;
        try {
            f = d.gSquared(d.branchSeed.at);
        } catch (const Error&) {
            throw Error(ErrorKind::InvariantViolation, "branch seed sits on a pole of g^2");
        }
        Complex g = d.branchSeed.g;
        if (std::abs(g * g - f) > 1e-10 * std::max(1.0, std::abs(f)))
            throw Error(ErrorKind::InvariantViolation, "branch seed mismatch: g^2 != gSquared(at)");
        if (g == Complex(0)) throw Error(ErrorKind::InvariantViolation, "branch seed has g = 0");
    }
    if (doc.associatePhase != 0) d = associate(d, doc.associatePhase);
    return d;
}

inline SurfaceData parse_surface_spec(const std::string& text) { return surface_from_document(parse_spec_document(text)); }

// Raw document describing existing data.
inline SurfaceSpecDocument document_from_surface(const SurfaceData& d)
{
    SurfaceSpecDocument doc;
    doc.kind = "raw";
    doc.gSquared = {d.gSquared.numerator().coeffs(), d.gSquared.denominator().coeffs()};
    doc.gEta = {d.gEta.numerator().coeffs(), d.gEta.denominator().coeffs()};
    doc.branchSeed = d.branchSeed;
    doc.basePoint = d.basePoint;
    for (auto& m : d.markedPoints) doc.markedPoints.push_back({m.at, m.kind});
    doc.domain = d.domain == Domain::UpperHalfPlane ? "upper-half-plane" : "plane";
    doc.associatePhase = 0;
    doc.trinoidParams = d.trinoid;
    return doc;
}

// ---------------------------------------------------------------- run configuration

struct RunConfig {
    double quadTol = 1e-11;
    double keepAwayRadius = 1e-3;   // relative to the waypoint-set diameter
    double offsetEpsilon = 0;       // 0: automatic
    double truncationRadius = 0;    // 0: automatic
    SimplexConfig simplex;
    int meshResolution = 32;
    double weldTolerance = 1e-6;    // relative to the mesh bounding-box diameter
    int precision = 10;             // significant digits in exported meshes

    void validate() const
    {
        if (!(quadTol > 0 && keepAwayRadius > 0 && offsetEpsilon >= 0 && truncationRadius >= 0 && meshResolution >= 4 &&
              weldTolerance > 0 && precision >= 1 && precision <= 17))
            throw Error(ErrorKind::InvariantViolation, "run configuration values must be positive");
        simplex.validate();
    }

    NumericConfig numeric() const
    {
        NumericConfig c;
        c.quadTol = quadTol;
        c.keepAwayFactor = keepAwayRadius;
        return c;
    }

    PeriodConfig period() const
    {
        PeriodConfig p;
        p.numeric = numeric();
        p.offsetEpsilon = offsetEpsilon;
        p.truncationRadius = truncationRadius;
        return p;
    }
};

inline Json to_json(const RunConfig& c)
{
    return Json{{"quadTol", c.quadTol},
                {"keepAwayRadius", c.keepAwayRadius},
                {"offsetEpsilon", c.offsetEpsilon},
                {"truncationRadius", c.truncationRadius},
                {"simplex",
                 {{"reflection", c.simplex.reflection},
                  {"expansion", c.simplex.expansion},
                  {"contraction", c.simplex.contraction},
                  {"shrink", c.simplex.shrink},
                  {"maxIterations", c.simplex.maxIterations},
                  {"targetResidual", c.simplex.targetResidual},
                  {"initialSpread", c.simplex.initialSpread}}},
                {"meshResolution", c.meshResolution},
                {"weldTolerance", c.weldTolerance},
                {"precision", c.precision}};
}

inline RunConfig run_config_from(const Json& j)
{
    RunConfig c;
    if (!j.is_object()) detail::schema_error("(root)", "expected an object");
    detail::check_keys(j, "", {"quadTol", "keepAwayRadius", "offsetEpsilon", "truncationRadius", "simplex",
                               "meshResolution", "weldTolerance", "precision"});
    auto num = [&](const Json& o, const char* k, auto& dst, const std::string& path) {
        if (!o.contains(k)) return;
        if (!o[k].is_number()) detail::schema_error(path + k, "expected a number");
        dst = o[k].get<std::decay_t<decltype(dst)>>();
    };
    num(j, "quadTol", c.quadTol, "");
    num(j, "keepAwayRadius", c.keepAwayRadius, "");
    num(j, "offsetEpsilon", c.offsetEpsilon, "");
    num(j, "truncationRadius", c.truncationRadius, "");
    num(j, "meshResolution", c.meshResolution, "");
    num(j, "weldTolerance", c.weldTolerance, "");
    num(j, "precision", c.precision, "");
    if (j.contains("simplex")) {
        auto& s = j["simplex"];
        if (!s.is_object()) detail::schema_error("simplex", "expected an object");
        detail::check_keys(s, "simplex.", {"reflection", "expansion", "contraction", "shrink", "maxIterations",
                                           "targetResidual", "initialSpread"});
        num(s, "reflection", c.simplex.reflection, "simplex.");
        num(s, "expansion", c.simplex.expansion, "simplex.");
        num(s, "contraction", c.simplex.contraction, "simplex.");
        num(s, "shrink", c.simplex.shrink, "simplex.");
        num(s, "maxIterations", c.simplex.maxIterations, "simplex.");
        num(s, "targetResidual", c.simplex.targetResidual, "simplex.");
        num(s, "initialSpread", c.simplex.initialSpread, "simplex.");
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IOFailure, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// write to a temporary in the same directory, then rename over the target
inline void write_file_atomic(const std::string& path, const std::string& bytes)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IOFailure, "cannot write " + tmp.string());
        out.write(bytes.data(), std::streamsize(bytes.size()));
        out.flush();
        if (!out) throw Error(ErrorKind::IOFailure, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::IOFailure, "cannot rename onto " + path);
    }
}

// ---------------------------------------------------------------- meshes

enum class MeshFormat { OBJ, PLYAscii };

inline MeshFormat mesh_format_for(const std::string& path)
{
    auto ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (ext == ".obj") return MeshFormat::OBJ;
    if (ext == ".ply") return MeshFormat::PLYAscii;
    throw Error(ErrorKind::IOFailure, "unsupported mesh extension: " + path);
}

// %#.Ng keeps trailing zeros, so every coordinate carries exactly N significant digits
inline std::string format_real(double x, int precision)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.*g", precision, x == 0 ? 0.0 : x);
    return buf;
}

inline std::string export_mesh(const Mesh& m, MeshFormat fmt, int precision)
{
    if (precision < 1 || precision > 17) throw Error(ErrorKind::IOFailure, "precision must be in [1, 17]");
    for (auto& f : m.faces)
        for (int i : f)
            if (i < 0 || i >= int(m.vertices.size())) throw Error(ErrorKind::IOFailure, "face index out of range");
    std::string out;
    auto vline = [&](const char* prefix, const Vec3& v) {
        out += prefix;
        out += format_real(v.x(), precision) + " " + format_real(v.y(), precision) + " " + format_real(v.z(), precision) + "\n";
    };
    if (fmt == MeshFormat::OBJ) {
        for (auto& v : m.vertices) vline("v ", v);
        for (auto& f : m.faces)
            out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " + std::to_string(f[2] + 1) + "\n";
        return out;
    }
    out += "ply\nformat ascii 1.0\n";
    out += "element vertex " + std::to_string(m.vertices.size()) + "\n";
    out += "property double x\nproperty double y\nproperty double z\n";
    out += "element face " + std::to_string(m.faces.size()) + "\n";
    out += "property list uchar int vertex_indices\nend_header\n";
    for (auto& v : m.vertices) vline("", v);
    for (auto& f : m.faces) out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + "\n";
    return out;
}

inline void write_mesh(const Mesh& m, const std::string& path, int precision)
{
    write_file_atomic(path, export_mesh(m, mesh_format_for(path), precision));
}

// Triangles only; texture/normal indices after '/' are ignored, other records are skipped.
inline Mesh import_obj(const std::string& text)
{
    Mesh m;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) throw Error(ErrorKind::IOFailure, "bad vertex on line " + std::to_string(lineNo));
            m.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<int> ids;
            std::string tok;
            while (ls >> tok) {
                int k = 0;
                try {
                    k = std::stoi(tok.substr(0, tok.find('/')));
                } catch (...) {
                    throw Error(ErrorKind::IOFailure, "bad face index on line " + std::to_string(lineNo));
                }
                int idx = k > 0 ? k - 1 : int(m.vertices.size()) + k;
                if (k == 0 || idx < 0 || idx >= int(m.vertices.size()))
                    throw Error(ErrorKind::IOFailure, "face index out of range on line " + std::to_string(lineNo));
                ids.push_back(idx);
            }
            if (ids.size() != 3) throw Error(ErrorKind::IOFailure, "non-triangular face on line " + std::to_string(lineNo));
            m.faces.push_back({ids[0], ids[1], ids[2]});
        }
    }
    return m;
}

// ---------------------------------------------------------------- reports

inline Json to_json(const SolveReport& r, bool withTrajectory = true)
{
    Json j;
    j["solution"] = to_json(r.solution);
    j["residualNorm"] = r.residualNorm;
    j["objective"] = r.objective;
    j["iterations"] = r.iterations;
    j["evaluations"] = r.evaluations;
    j["converged"] = r.converged;
    j["endAngles"] = r.endAngles;
    if (withTrajectory) {
        Json t = Json::array();
        for (auto& [p, v] : r.trajectory) t.push_back({{"lambda", {p.lambda1, p.lambda2, p.lambda3}}, {"c", p.c}, {"value", v}});
        j["trajectory"] = t;
    }
    return j;
}

} // namespace msurf
