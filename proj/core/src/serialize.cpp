#include "tmom/serialize.hpp"

#include <fstream>
#include <sstream>

namespace tmom {

namespace {

Json complex_to_json(Coeff c) { return Json::array({c.real(), c.imag()}); }

Coeff complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json index_to_json(MonomialIndex s) { return Json::array({s.m, s.n}); }

MonomialIndex index_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw SchemaError("exponent index must be [m, n]");
    return {j[0].get<int>(), j[1].get<int>()};
}

std::vector<int> multi_index_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("multi-index must be a nonempty integer array");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw SchemaError("multi-index entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace

Json poly_to_json(const LaurentPoly& p) {
    Json out = Json::array();
    for (const auto& [s, c] : p.terms()) out.push_back(Json::array({index_to_json(s), complex_to_json(c)}));
    return out;
}

LaurentPoly poly_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("polynomial must be a list of [[m,n],[re,im]] entries");
    LaurentPoly p;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2) throw SchemaError("polynomial entry must be a pair");
        const MonomialIndex s = index_from_json(entry[0]);
        p.set(s, p.coeff(s) + complex_from_json(entry[1]));
    }
    return p;
}

Json trig_to_json(const TrigPoly& p) {
    Json coeffs = Json::array();
    for (const auto& [a, c] : p.terms()) coeffs.push_back(Json::array({Json(a), complex_to_json(c)}));
    return Json{{"kappa", p.kappa()}, {"coeffs", coeffs}};
}

TrigPoly trig_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kappa") || !j.contains("coeffs"))
        throw SchemaError("trig polynomial must carry kappa and coeffs");
    TrigPoly p(j["kappa"].get<int>());
    for (const auto& entry : j["coeffs"]) {
        if (!entry.is_array() || entry.size() != 2) throw SchemaError("trig entry must be a pair");
        const std::vector<int> a = multi_index_from_json(entry[0]);
        p.set(a, p.coeff(a) + complex_from_json(entry[1]));
    }
    return p;
}

Json system_to_json(const CoefficientSystem& s) {
    Json truncation = Json::array();
    Json values = Json::array();
    for (const auto& [idx, c] : s.values()) {
        truncation.push_back(index_to_json(idx));
        values.push_back(Json::array({index_to_json(idx), complex_to_json(c)}));
    }
    return Json{{"truncation", truncation}, {"values", values}};
}

CoefficientSystem system_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("values"))
        throw SchemaError("coefficient system must carry truncation and values");
    CoefficientSystem out;
    for (const auto& entry : j["values"]) {
        if (!entry.is_array() || entry.size() != 2) throw SchemaError("value entry must be a pair");
        out.set(index_from_json(entry[0]), complex_from_json(entry[1]));
    }
    for (const auto& t : j["truncation"])
        if (!out.contains(index_from_json(t))) throw SchemaError("truncation index without a value");
    if (j["truncation"].size() != out.values().size())
        throw SchemaError("truncation and value key set differ");
    return out;
}

Json dyadic_to_json(const DyadicGaussian& d) {
    return Json{{"re_num", d.re_num}, {"im_num", d.im_num}, {"exp2", d.exp2}};
}

DyadicGaussian dyadic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("re_num") || !j.contains("im_num") || !j.contains("exp2"))
        throw SchemaError("dyadic value must carry re_num, im_num, exp2");
    return DyadicGaussian(j["re_num"].get<long long>(), j["im_num"].get<long long>(),
                          j["exp2"].get<int>());
}

Json gram_to_json(const GramCertificate& c) {
    Json basis = Json::array();
    for (const auto& s : c.basis) basis.push_back(index_to_json(s));
    Json gram = Json::array();
    for (int i = 0; i < c.gram.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < c.gram.cols(); ++j) row.push_back(complex_to_json(c.gram(i, j)));
        gram.push_back(row);
    }
    return Json{{"basis", basis}, {"gram", gram}};
}

GramCertificate gram_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("gram"))
        throw SchemaError("certificate must carry basis and gram");
    GramCertificate out;
    for (const auto& s : j["basis"]) out.basis.push_back(index_from_json(s));
    const int n = static_cast<int>(out.basis.size());
    if (static_cast<int>(j["gram"].size()) != n) throw SchemaError("gram row count mismatch");
    out.gram = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j["gram"][i].size()) != n) throw SchemaError("gram column count mismatch");
        for (int k = 0; k < n; ++k) out.gram(i, k) = complex_from_json(j["gram"][i][k]);
    }
    return out;
}

Json feasibility_to_json(const FeasibilityReport& r) {
    switch (r.kind) {
        case FeasibilityReport::Kind::Certificate:
            return Json{{"verdict", "certificate"},
                        {"certificate", gram_to_json(r.certificate)},
                        {"min_eigenvalue", r.min_eigenvalue},
                        {"iterations", r.iterations}};
        case FeasibilityReport::Kind::Infeasible:
            return Json{{"verdict", "infeasible"},
                        {"witness_point", complex_to_json(r.witness_point)},
                        {"witness_value", r.witness_value}};
        default:
            return Json{{"verdict", "unknown"}, {"iterations", r.iterations}, {"residual", r.residual}};
    }
}

namespace {

std::string semigroup_name(const IndexClass& c) {
    switch (c.tag()) {
        case IndexClass::Tag::N: return "N";
        case IndexClass::Tag::NPlus: return "NPlus";
        case IndexClass::Tag::ZZ: return "ZZ";
        case IndexClass::Tag::Zk: return "Zk";
        case IndexClass::Tag::Diagonal: return "Diagonal";
    }
    return "N";
}

}  // namespace

Json moment_data_to_json(const MomentData& d) {
    Json truncation = Json::array();
    Json values = Json::array();
    if (d.is_trig()) {
        for (const auto& [a, c] : d.trig_values) {
            truncation.push_back(Json(a));
            values.push_back(Json::array({Json(a), complex_to_json(c)}));
        }
    } else {
        for (const auto& [s, c] : d.values) {
            truncation.push_back(index_to_json(s));
            values.push_back(Json::array({index_to_json(s), complex_to_json(c)}));
        }
    }
    return Json{{"semigroup", semigroup_name(d.semigroup)},
                {"kappa", d.is_trig() ? d.semigroup.kappa() : 0},
                {"truncation", truncation},
                {"values", values}};
}

MomentData moment_data_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("semigroup") || !j.contains("values"))
        throw SchemaError("moment data must carry semigroup and values");
    MomentData out;
    const std::string name = j["semigroup"].get<std::string>();
    if (name == "N")
        out.semigroup = IndexClass::n();
    else if (name == "NPlus")
        out.semigroup = IndexClass::nplus();
    else if (name == "ZZ")
        out.semigroup = IndexClass::zz();
    else if (name == "Zk") {
        if (!j.contains("kappa")) throw SchemaError("Zk data must carry kappa");
        out.semigroup = IndexClass::zk(j["kappa"].get<int>());
    } else
        throw SchemaError("unknown semigroup tag " + name);

    for (const auto& entry : j["values"]) {
        if (!entry.is_array() || entry.size() != 2) throw SchemaError("value entry must be a pair");
        if (out.is_trig()) {
            const auto alpha = multi_index_from_json(entry[0]);
            if (static_cast<int>(alpha.size()) != out.semigroup.kappa())
                throw SchemaError("index length differs from kappa");
            out.trig_values[alpha] = complex_from_json(entry[1]);
        } else {
            const MonomialIndex s = index_from_json(entry[0]);
            if (!out.semigroup.contains(s))
                throw SchemaError("index outside the declared semigroup");
            out.values[s] = complex_from_json(entry[1]);
        }
    }
    return out;
}

Json measure_to_json(const Measure& mu) {
    if (const auto* atomic = std::get_if<AtomicMeasure>(&mu)) {
        Json atoms = Json::array();
        for (const auto& atom : atomic->atoms) {
            Json point = Json::array();
            for (const Coeff z : atom.point) point.push_back(complex_to_json(z));
            atoms.push_back(Json{{"point", point}, {"weight", atom.weight}});
        }
        return Json{{"type", "atomic"}, {"atoms", atoms}};
    }
    if (const auto* ray = std::get_if<RayMeasure>(&mu)) {
        Json rays = Json::array();
        for (const auto& r : ray->rays) {
            Json radial = Json::array();
            for (const auto& [rho, w] : r.radial) radial.push_back(Json::array({rho, w}));
            rays.push_back(Json{{"angle", r.angle}, {"radial", radial}});
        }
        return Json{{"type", "ray"}, {"rays", rays}};
    }
    const auto& rd = std::get<RadialDensityMeasure>(mu);
    return Json{{"type", "radial_density"}, {"power", rd.power}, {"radius", rd.radius}};
}

Measure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw SchemaError("measure must carry a type tag");
    const std::string type = j["type"].get<std::string>();
    if (type == "atomic") {
        AtomicMeasure out;
        for (const auto& atom : j.at("atoms")) {
            AtomicMeasure::Atom a;
            const Json& point = atom.at("point");
            if (point.is_array() && point.size() == 2 && point[0].is_number())
                a.point.push_back(complex_from_json(point));  // bare [re, im]
            else
                for (const auto& z : point) a.point.push_back(complex_from_json(z));
            a.weight = atom.at("weight").get<double>();
            if (a.weight <= 0.0) throw SchemaError("atom weights must be positive");
            out.atoms.push_back(std::move(a));
        }
        return out;
    }
    if (type == "ray") {
        RayMeasure out;
        for (const auto& ray : j.at("rays")) {
            RayMeasure::Ray r;
            r.angle = ray.at("angle").get<double>();
            for (const auto& rw : ray.at("radial")) {
                if (!rw.is_array() || rw.size() != 2) throw SchemaError("radial entry must be [rho, w]");
                r.radial.push_back({rw[0].get<double>(), rw[1].get<double>()});
                if (r.radial.back().second <= 0.0) throw SchemaError("radial weights must be positive");
            }
            out.rays.push_back(std::move(r));
        }
        return out;
    }
    if (type == "radial_density") {
        RadialDensityMeasure out;
        out.power = j.at("power").get<int>();
        out.radius = j.at("radius").get<double>();
        if (out.radius <= 0.0) throw SchemaError("radius must be positive");
        return out;
    }
    throw SchemaError("unknown measure type " + type);
}

Json squares_to_json(const SquareList& s) {
    Json squares = Json::array();
    for (const auto& q : s) squares.push_back(poly_to_json(q));
    return Json{{"kind", "laurent"}, {"squares", squares}};
}

Json squares_to_json(const TrigSquareList& s) {
    Json squares = Json::array();
    for (const auto& q : s) squares.push_back(trig_to_json(q));
    return Json{{"kind", "trig"}, {"squares", squares}};
}

AnySquares squares_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("squares")) throw SchemaError("square list must carry squares");
    const std::string kind = j.value("kind", "laurent");
    if (kind == "laurent") {
        SquareList out;
        for (const auto& q : j["squares"]) out.push_back(poly_from_json(q));
        return out;
    }
    if (kind == "trig") {
        TrigSquareList out;
        for (const auto& q : j["squares"]) out.push_back(trig_from_json(q));
        return out;
    }
    throw SchemaError("unknown square-list kind " + kind);
}

Json operator_tuple_to_json(const OperatorTuple& t) {
    Json matrices = Json::array();
    for (const auto& m : t.matrices) {
        Json rows = Json::array();
        for (int i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
            rows.push_back(row);
        }
        matrices.push_back(rows);
    }
    return Json{{"kappa", t.kappa}, {"dim", t.dim()}, {"matrices", matrices}};
}

OperatorTuple operator_tuple_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kappa") || !j.contains("dim") || !j.contains("matrices"))
        throw SchemaError("operator tuple must carry kappa, dim, matrices");
    OperatorTuple out;
    out.kappa = j["kappa"].get<int>();
    const int d = j["dim"].get<int>();
    if (static_cast<int>(j["matrices"].size()) != out.kappa)
        throw SchemaError("matrix count differs from kappa");
    for (const auto& mj : j["matrices"]) {
        if (static_cast<int>(mj.size()) != d) throw SchemaError("matrix row count differs from dim");
        Matrix m(d, d);
        for (int r = 0; r < d; ++r) {
            if (static_cast<int>(mj[r].size()) != d) throw SchemaError("matrix column count differs from dim");
            for (int c = 0; c < d; ++c) m(r, c) = complex_from_json(mj[r][c]);
        }
        out.matrices.push_back(std::move(m));
    }
    return out;
}

Json operator_system_to_json(const OperatorCoefficientSystem& s) {
    Json out = Json::array();
    for (const auto& [key, value] : s.coefficients)
        out.push_back(Json{{"alpha", key.alpha}, {"i", key.i}, {"j", key.j}, {"value", complex_to_json(value)}});
    return out;
}

OperatorCoefficientSystem operator_system_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("coefficient system must be a list of entries");
    OperatorCoefficientSystem out;
    out.m = 1;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("alpha") || !entry.contains("i") ||
            !entry.contains("j") || !entry.contains("value"))
            throw SchemaError("system entry must carry alpha, i, j, value");
        const int i = entry["i"].get<int>();
        const int jj = entry["j"].get<int>();
        if (i < 1 || jj < 1) throw SchemaError("block indices are 1-based");
        out.m = std::max({out.m, i, jj});
        out.add(multi_index_from_json(entry["alpha"]), i, jj, complex_from_json(entry["value"]));
    }
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    unsigned long long h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace tmom
