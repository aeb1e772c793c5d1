#include "formring/json_io.hpp"

namespace formring {

Json context_to_json(const RingPtr& ring) {
    Json j;
    switch (ring->kind()) {
        case RingKind::Integers: j["kind"] = "integers"; break;
        case RingKind::IntegersMod:
            j["kind"] = "integers-mod";
            j["m"] = ring->modulus().get_str();
            break;
        case RingKind::Polynomials:
            j["kind"] = "polynomials";
            j["vars"] = ring->vars();
            break;
        case RingKind::FractionField:
            j["kind"] = "fraction-field";
            j["base"] = context_to_json(ring->base());
            break;
    }
    return j;
}

RingPtr context_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "integers") return Ring::integers();
    if (kind == "integers-mod") return Ring::integers_mod(mpz_class(j.at("m").get<std::string>()));
    if (kind == "polynomials") return Ring::polynomials(j.at("vars").get<std::vector<std::string>>());
    if (kind == "fraction-field") return Ring::fraction_field(context_from_json(j.at("base")));
    throw std::invalid_argument("unknown context kind: " + kind);
}

Json value_to_json(const Value& v) {
    switch (v.ring()->kind()) {
        case RingKind::Integers:
        case RingKind::IntegersMod: {
            const mpz_class& z = v.as_mpz();
            if (z.fits_slong_p()) return Json(z.get_si());
            return Json(z.get_str());
        }
        default: return Json(v.str());
    }
}

Value value_from_json(const Json& j, const RingPtr& ring) {
    if (j.is_number_integer()) return ring->from_int(j.get<long>());
    return ring->parse(j.get<std::string>());
}

Json form_to_json(const BinaryForm& f) {
    Json j;
    j["n"] = f.n;
    j["context"] = context_to_json(f.ring);
    Json coeffs = Json::array();
    for (const Value& c : f.coeffs) coeffs.push_back(value_to_json(c));
    j["coeffs"] = coeffs;
    j["twist"] = f.twist;
    return j;
}

BinaryForm form_from_json(const Json& j) {
    RingPtr ring = context_from_json(j.at("context"));
    std::vector<Value> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(value_from_json(c, ring));
    return make_form(j.at("n").get<int>(), ring, std::move(coeffs), j.at("twist").get<int>());
}

namespace {

Json cube_to_json(const std::vector<std::vector<std::vector<Value>>>& c) {
    Json out = Json::array();
    for (const auto& plane : c) {
        Json jp = Json::array();
        for (const auto& row : plane) {
            Json jr = Json::array();
            for (const auto& v : row) jr.push_back(value_to_json(v));
            jp.push_back(jr);
        }
        out.push_back(jp);
    }
    return out;
}

std::vector<std::vector<std::vector<Value>>> cube_from_json(const Json& j, const RingPtr& ring) {
    std::vector<std::vector<std::vector<Value>>> out;
    for (const auto& jp : j) {
        std::vector<std::vector<Value>> plane;
        for (const auto& jr : jp) {
            std::vector<Value> row;
            for (const auto& v : jr) row.push_back(value_from_json(v, ring));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

}  // namespace

Json mult_table_to_json(const MultTable& t) {
    Json j;
    j["n"] = t.n;
    j["context"] = context_to_json(t.ring);
    j["c"] = cube_to_json(t.c);
    return j;
}

MultTable mult_table_from_json(const Json& j) {
    MultTable t;
    t.n = j.at("n").get<int>();
    t.ring = context_from_json(j.at("context"));
    t.c = cube_from_json(j.at("c"), t.ring);
    return t;
}

Json action_table_to_json(const ActionTable& t) {
    Json j;
    j["n"] = t.n;
    j["context"] = context_to_json(t.ring);
    j["level"] = t.level;
    j["twist"] = t.twist;
    j["d"] = cube_to_json(t.d);
    return j;
}

ActionTable action_table_from_json(const Json& j) {
    ActionTable t;
    t.n = j.at("n").get<int>();
    t.ring = context_from_json(j.at("context"));
    t.level = j.at("level").get<int>();
    t.twist = j.at("twist").get<int>();
    t.d = cube_from_json(j.at("d"), t.ring);
    return t;
}

Json matrix_to_json(const ValueMat& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(value_to_json(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

ValueMat matrix_from_json(const Json& j, const RingPtr& ring) {
    std::size_t rows = j.size();
    std::size_t cols = rows ? j.at(0).size() : 0;
    ValueMat m = value_mat(rows, cols, ring);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = value_from_json(j.at(r).at(c), ring);
    return m;
}

Json pair_to_json(const BinaryPair& p) {
    Json j;
    j["n"] = p.n();
    j["R"] = mult_table_to_json(p.r);
    j["I"] = action_table_to_json(p.i);
    j["quot"] = matrix_to_json(p.quot);
    j["phi"] = matrix_to_json(p.phi);
    j["twist"] = p.twist;
    return j;
}

BinaryPair pair_from_json(const Json& j) {
    BinaryPair p;
    p.r = mult_table_from_json(j.at("R"));
    p.i = action_table_from_json(j.at("I"));
    p.quot = matrix_from_json(j.at("quot"), p.r.ring);
    p.phi = matrix_from_json(j.at("phi"), p.r.ring);
    p.twist = j.at("twist").get<int>();
    return p;
}

}  // namespace formring
