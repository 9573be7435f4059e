#include "symperm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "symperm/error.hpp"
#include "symperm/geometric.hpp"

namespace symperm::io {

namespace {

[[noreturn]] void malformed(const std::string &what) {
    throw ValidationError("malformed document: " + what);
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        malformed(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

int int_field(const json &j, const char *key) {
    const json &v = field(j, key);
    if (!v.is_number_integer()) {
        malformed(std::string("field \"") + key + "\" must be an integer");
    }
    return v.get<int>();
}

std::vector<Complex> complex_array(const json &j) {
    if (!j.is_array()) {
        malformed("expected an array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto &z : j) {
        out.push_back(complex_from_json(z));
    }
    return out;
}

json complex_array_to_json(const std::vector<Complex> &v) {
    json out = json::array();
    for (const auto &z : v) {
        out.push_back(complex_to_json(z));
    }
    return out;
}

} // namespace

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_scientific(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    std::string s(buf);
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    int exponent = std::stoi(s.substr(e + 1));
    return mantissa + "e" + std::to_string(exponent);
}

std::string format_complex(const Complex &z) {
    const double im = z.imag();
    const std::string sign = std::signbit(im) && im != 0.0 ? " - " : " + ";
    return format_scientific(z.real()) + sign + format_scientific(std::abs(im)) + "i";
}

json complex_to_json(const Complex &z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        malformed("complex scalar must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (int r = 0; r < m.order(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.order(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", m.order()}, {"rows", std::move(rows)}};
}

json to_json(const MultisetColumns &cols) {
    json columns = json::array();
    for (const auto &c : cols.columns()) {
        columns.push_back({{"vector", complex_array_to_json(c.vector)}, {"multiplicity", c.multiplicity}});
    }
    return {{"n", cols.dimension()}, {"columns", std::move(columns)}};
}

json to_json(const SymmetricState &s) {
    json terms = json::array();
    for (const auto &[k, c] : s.terms()) {
        terms.push_back({{"k", k.parts()}, {"coeff", complex_to_json(c)}});
    }
    return {{"n", s.n()}, {"d", s.d()}, {"terms", std::move(terms)}};
}

json to_json(const ProductState &p) {
    json rows = json::array();
    for (const auto &row : p.rows()) {
        rows.push_back(complex_array_to_json(row));
    }
    return {{"n", p.n()}, {"d", p.d()}, {"rows", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json &j) {
    const int n = int_field(j, "n");
    const json &rows = field(j, "rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        malformed("\"rows\" must hold n rows");
    }
    std::vector<std::vector<Complex>> parsed;
    for (const auto &row : rows) {
        parsed.push_back(complex_array(row));
    }
    return ComplexMatrix::from_rows(parsed);
}

MultisetColumns multiset_from_json(const json &j) {
    const int n = int_field(j, "n");
    const json &columns = field(j, "columns");
    if (!columns.is_array()) {
        malformed("\"columns\" must be an array");
    }
    std::vector<RepeatedColumn> parsed;
    for (const auto &c : columns) {
        parsed.push_back({complex_array(field(c, "vector")), int_field(c, "multiplicity")});
    }
    return {n, std::move(parsed)};
}

SymmetricState symmetric_state_from_json(const json &j) {
    const int n = int_field(j, "n");
    const int d = int_field(j, "d");
    const json &terms = field(j, "terms");
    if (!terms.is_array()) {
        malformed("\"terms\" must be an array");
    }
    CoefficientMap parsed;
    for (const auto &t : terms) {
        const json &k = field(t, "k");
        if (!k.is_array()) {
            malformed("\"k\" must be an integer array");
        }
        std::vector<int> parts;
        for (const auto &x : k) {
            if (!x.is_number_integer()) {
                malformed("\"k\" must be an integer array");
            }
            parts.push_back(x.get<int>());
        }
        if (!parsed.emplace(Composition(std::move(parts)), complex_from_json(field(t, "coeff"))).second) {
            malformed("duplicate composition in \"terms\"");
        }
    }
    return {n, d, std::move(parsed)};
}

ProductState product_state_from_json(const json &j) {
    const int n = int_field(j, "n");
    const int d = int_field(j, "d");
    const json &rows = field(j, "rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
        malformed("\"rows\" must hold n rows");
    }
    std::vector<std::vector<Complex>> parsed;
    for (const auto &row : rows) {
        parsed.push_back(complex_array(row));
        if (static_cast<int>(parsed.back().size()) != d) {
            malformed("each row must hold d amplitudes");
        }
    }
    return ProductState(std::move(parsed));
}

std::string violations_to_jsonl(std::string_view target, const std::vector<TrialViolation> &records) {
    std::string out;
    for (const auto &r : records) {
        json line = {{"target", target}, {"seed", r.seed}, {"n", r.n},     {"d", r.d},
                     {"k", r.k},         {"lhs", r.lhs},   {"rhs", r.rhs}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string sweep_to_csv(const std::vector<WWBarPoint> &points) {
    std::string out = "s,tan_theta,theta,lambda_direct,lambda_paper_prefactor,e_sin2\n";
    for (const auto &p : points) {
        out += format_number(p.s) + ',' + format_number(p.tan_theta) + ',' +
               format_number(p.theta) + ',' + format_number(p.lambda_max) + ',' +
               format_number(p.lambda_paper_prefactor) + ',' + format_number(e_sin2(p.lambda_max)) +
               '\n';
    }
    return out;
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string checksum(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace symperm::io
