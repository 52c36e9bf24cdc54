#include "malcev/io.hpp"

#include <cstdint>
#include <fstream>
#include <set>

namespace malcev::io {

namespace {

const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(std::string("JSON: missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t index_from_json(const Json &j, std::size_t bound, const char *what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0 || static_cast<std::size_t>(j.get<long long>()) >= bound)
        throw Error(std::string("JSON: ") + what + " out of range");
    return j.get<std::size_t>();
}

Vector sized_vector(const Json &j, std::size_t n, const char *what)
{
    Vector v = vector_from_json(j);
    if (v.size() != n)
        throw Error(std::string("JSON: ") + what + " has length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(n));
    return v;
}

} // namespace

Json to_json(const Scalar &s) { return format_scalar(s); }

Json to_json(std::span<const Scalar> v)
{
    Json out = Json::array();
    for (const auto &s : v)
        out.push_back(format_scalar(s));
    return out;
}

Json to_json(const Matrix &m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.push_back(to_json(m.row(i)));
    return out;
}

Json to_json(const std::vector<Vector> &vs)
{
    Json out = Json::array();
    for (const auto &v : vs)
        out.push_back(to_json(v));
    return out;
}

Scalar scalar_from_json(const Json &j)
{
    if (j.is_string())
        return parse_scalar(j.get<std::string>());
    if (j.is_number_integer())
        return Scalar(std::to_string(j.get<long long>()));
    throw Error("JSON: scalars must be strings \"p/q\" or integers");
}

Vector vector_from_json(const Json &j)
{
    if (!j.is_array())
        throw Error("JSON: expected an array of scalars");
    Vector v;
    for (const auto &e : j)
        v.push_back(scalar_from_json(e));
    return v;
}

Matrix matrix_from_json(const Json &j)
{
    if (!j.is_array())
        throw Error("JSON: expected an array of rows");
    std::vector<Vector> rows;
    for (const auto &r : j)
        rows.push_back(vector_from_json(r));
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (const auto &r : rows)
        if (r.size() != cols)
            throw Error("JSON: ragged matrix");
    return Matrix::from_rows(rows, cols);
}

Json to_json(const LieAlgebra &L)
{
    Json out;
    out["dim"] = L.dim();
    out["basis"] = L.names();
    Json br = Json::array();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j) {
            const Vector v = L.basis_bracket(i, j);
            if (!is_zero(v))
                br.push_back(Json{{"i", i}, {"j", j}, {"value", to_json(v)}});
        }
    out["brackets"] = br;
    if (L.grading())
        out["grading"] = *L.grading();
    return out;
}

LieAlgebra lie_algebra_from_json(const Json &j)
{
    const std::size_t n = field(j, "dim").get<std::size_t>();
    std::vector<std::string> names;
    if (j.contains("basis"))
        names = j.at("basis").get<std::vector<std::string>>();
    if (!names.empty() && names.size() != n)
        throw Error("JSON: basis names do not match dim");
    BracketTable table(n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &b : j.value("brackets", Json::array())) {
        const std::size_t i = index_from_json(field(b, "i"), n, "bracket index");
        const std::size_t k = index_from_json(field(b, "j"), n, "bracket index");
        if (!seen.insert({std::min(i, k), std::max(i, k)}).second)
            throw Error("JSON: bracket listed twice");
        const Vector v = sized_vector(field(b, "value"), n, "bracket value");
        table.at(i, k) = v;
        table.at(k, i) = negate(v);
    }
    auto L = to_lie_algebra(table, names);
    if (!L)
        throw Error("JSON: bracket table is not antisymmetric");
    if (!check_jacobi(*L).empty())
        throw Error("JSON: bracket fails the Jacobi identity");
    if (j.contains("grading"))
        L->set_grading(j.at("grading").get<std::vector<int>>());
    return *L;
}

Json word_to_json(const HallBasis &hall, std::size_t word)
{
    const HallWord &w = hall.word(word);
    if (w.is_letter())
        return w.generator;
    return Json::array({word_to_json(hall, w.left), word_to_json(hall, w.right)});
}

BracketExpr expr_from_json(const Json &j)
{
    if (j.is_number_integer() && j.get<long long>() >= 0)
        return BracketExpr::letter(j.get<int>());
    if (j.is_array() && j.size() == 2)
        return BracketExpr::bracket(expr_from_json(j[0]), expr_from_json(j[1]));
    throw Error("JSON: a word is a generator index or a pair of words");
}

Json to_json(const HallBasis &hall, const FreeLieElement &x)
{
    Json out = Json::object();
    for (const auto &[w, c] : x.coords)
        out[word_to_json(hall, w).dump()] = format_scalar(c);
    return out;
}

FreeLieElement free_element_from_json(const HallBasis &hall, const Json &j)
{
    if (!j.is_object())
        throw Error("JSON: a free Lie element is an object {word: scalar}");
    FreeLieElement x;
    for (const auto &[key, value] : j.items()) {
        Json word;
        try {
            word = Json::parse(key);
        } catch (const nlohmann::json::exception &) {
            throw Error("JSON: cannot parse word \"" + key + "\"");
        }
        const BracketExpr e = expr_from_json(word);
        std::vector<const BracketExpr *> todo{&e};
        while (!todo.empty()) {
            const BracketExpr *t = todo.back();
            todo.pop_back();
            if (t->is_letter() && static_cast<std::size_t>(t->generator) >= hall.generators())
                throw Error("JSON: generator index out of range in \"" + key + "\"");
            for (const auto &c : t->children)
                todo.push_back(&c);
        }
        x.add(hall.rewrite(e), scalar_from_json(value));
    }
    return x;
}

Json to_json(const FiniteDGA &A)
{
    Json out;
    out["dims"] = A.dims;
    Json d = Json::array();
    for (const auto &m : A.d)
        d.push_back(to_json(m));
    out["d"] = d;
    Json prod = Json::array();
    const std::size_t D = A.top_degree();
    for (std::size_t p = 0; p <= D; ++p)
        for (std::size_t q = p; p + q <= D; ++q)
            for (std::size_t i = 0; i < A.dims[p]; ++i)
                for (std::size_t j = p == q ? i : 0; j < A.dims[q]; ++j) {
                    const Vector &v = A.basis_product(p, i, q, j);
                    if (!is_zero(v))
                        prod.push_back(Json{{"p", p}, {"i", i}, {"q", q}, {"j", j}, {"value", to_json(v)}});
                }
    out["product"] = prod;
    if (!A.names.empty())
        out["names"] = A.names;
    return out;
}

FiniteDGA dga_from_json(const Json &j)
{
    FiniteDGA A = FiniteDGA::with_dims(field(j, "dims").get<std::vector<std::size_t>>());
    const std::size_t D = A.top_degree();
    const Json &d = j.value("d", Json::array());
    if (d.size() > D)
        throw Error("JSON: too many differential matrices");
    for (std::size_t n = 0; n < d.size(); ++n) {
        Matrix m = matrix_from_json(d[n]);
        if (A.dims[n] == 0 || A.dims[n + 1] == 0)
            m = Matrix(A.dims[n + 1], A.dims[n]);
        if (m.rows() != A.dims[n + 1] || m.cols() != A.dims[n])
            throw Error("JSON: differential " + std::to_string(n) + " has the wrong shape");
        A.d[n] = m;
    }
    for (const auto &e : j.value("product", Json::array())) {
        const std::size_t p = index_from_json(field(e, "p"), D + 1, "degree");
        const std::size_t q = index_from_json(field(e, "q"), D + 1, "degree");
        if (p + q > D)
            throw Error("JSON: product lands above the top degree");
        const std::size_t i = index_from_json(field(e, "i"), A.dims[p], "basis index");
        const std::size_t k = index_from_json(field(e, "j"), A.dims[q], "basis index");
        A.set(p, i, q, k, sized_vector(field(e, "value"), A.dims[p + q], "product value"));
    }
    if (j.contains("names"))
        A.names = j.at("names").get<std::vector<std::vector<std::string>>>();
    A.validate();
    return A;
}

CupDatum cup_datum_from_json(const Json &j)
{
    CupDatum cd;
    cd.h1 = field(j, "h1").get<std::size_t>();
    cd.h2 = field(j, "h2").get<std::size_t>();
    for (const auto &row : field(j, "pairing")) {
        std::vector<Vector> r;
        for (const auto &v : row)
            r.push_back(vector_from_json(v));
        cd.pairing.push_back(std::move(r));
    }
    cd.validate();
    return cd;
}

Json to_json(const QuadraticPresentation &qp)
{
    Json out;
    out["generators"] = qp.generators;
    out["relations"] = to_json(qp.relations);
    Json readable = Json::array();
    for (const auto &w : qp.relations) {
        std::string s;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] != 0) {
                const auto [a, b] = wedge_pair(qp.generators, k);
                if (!s.empty())
                    s += " + ";
                s += format_scalar(w[k]) + "*[x" + std::to_string(a) + ",x" + std::to_string(b) + "]";
            }
        readable.push_back(s.empty() ? "0" : s);
    }
    out["relations_text"] = readable;
    return out;
}

QuadraticPresentation presentation_from_json(const Json &j)
{
    QuadraticPresentation qp;
    qp.generators = field(j, "generators").get<std::size_t>();
    for (const auto &r : j.value("relations", Json::array()))
        qp.relations.push_back(sized_vector(r, wedge_dim(qp.generators), "relation"));
    return qp;
}

GroupPresentation group_presentation_from_json(const Json &j)
{
    GroupPresentation p;
    p.generators = field(j, "generators").get<std::vector<std::string>>();
    for (const auto &r : j.value("relators", Json::array()))
        p.relators.push_back(p.parse_word(r.get<std::vector<std::string>>()));
    return p;
}

Assignment assignment_from_json(const SemidirectGroup &G, const GroupPresentation &p, const Json &j)
{
    Assignment a;
    const std::size_t n = G.algebra().dim();
    for (const auto &g : p.generators) {
        const Json &e = field(j, g.c_str());
        Vector log = sized_vector(field(e, "log"), n, "log");
        if (e.contains("aut"))
            a.emplace(g, G.element(std::move(log), matrix_from_json(e.at("aut"))));
        else
            a.emplace(g, G.element(std::move(log)));
    }
    return a;
}

Json to_json(const GroupPresentation &p, const Assignment &a)
{
    Json out = Json::object();
    for (const auto &g : p.generators) {
        const auto &e = a.at(g);
        out[g] = Json{{"log", to_json(e.log)}, {"aut", to_json(e.aut)}};
    }
    return out;
}

Json read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw Error(path + ": " + e.what());
    }
}

std::string digest(const Json &j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char *hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4)
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return out;
}

} // namespace malcev::io
