#include "cylsat/trig.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace cylsat {

namespace {

double term_value(const TrigTermR& t, const std::array<double, 3>& x, const DomainLengths& L) {
    const double pi = pi_double();
    const double Ld[3] = {rat_double(L.L1), rat_double(L.L2), rat_double(L.L3)};
    double v = rat_double(t.coeff);
    for (int i = 0; i < t.pi_pow; ++i) v *= pi;
    for (int i = 0; i < 3; ++i) {
        const double arg = t.k[i] * pi * x[i] / Ld[i];
        v *= t.f[i] == Factor::Sin ? std::sin(arg) : std::cos(arg);
    }
    return v;
}

char factor_char(Factor f) { return f == Factor::Sin ? 'S' : 'C'; }

Factor factor_from_char(char c) {
    if (c == 'S') return Factor::Sin;
    if (c == 'C') return Factor::Cos;
    throw std::invalid_argument("bad factor letter in field JSON");
}

}  // namespace

double eval(const TrigScalar& s, const std::array<double, 3>& x, const DomainLengths& L) {
    double acc = 0.0;
    for (const auto& t : s.terms()) acc += term_value(t, x, L);
    return acc;
}

std::array<double, 3> eval(const TrigVectorField& u, const std::array<double, 3>& x,
                           const DomainLengths& L) {
    return {eval(u.comp[0], x, L), eval(u.comp[1], x, L), eval(u.comp[2], x, L)};
}

std::string to_text(const TrigScalar& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(t.coeff);
        if (t.pi_pow > 0) {
            os << "*pi";
            if (t.pi_pow > 1) os << "^" << t.pi_pow;
        }
        for (int i = 0; i < 3; ++i) {
            os << "*" << (t.f[i] == Factor::Sin ? "S" : "C") << (i + 1) << "(" << t.k[i] << ")";
        }
    }
    return os.str();
}

std::string to_text(const TrigVectorField& u) {
    std::ostringstream os;
    os << "(" << to_text(u.comp[0]) << ",\n " << to_text(u.comp[1]) << ",\n " << to_text(u.comp[2])
       << ")";
    return os.str();
}

std::string to_json_string(const TrigVectorField& u) {
    nlohmann::json root = nlohmann::json::array();
    for (int c = 0; c < 3; ++c) {
        nlohmann::json comp = nlohmann::json::array();
        for (const auto& t : u.comp[c].terms()) {
            std::string fs;
            for (int i = 0; i < 3; ++i) fs += factor_char(t.f[i]);
            comp.push_back({{"factors", fs},
                            {"k", {t.k[0], t.k[1], t.k[2]}},
                            {"coeff", rat_str(t.coeff)},
                            {"pi_pow", t.pi_pow}});
        }
        root.push_back(std::move(comp));
    }
    return root.dump(2);
}

TrigVectorField field_from_json_string(const std::string& js) {
    nlohmann::json root = nlohmann::json::parse(js);
    if (!root.is_array() || root.size() != 3)
        throw std::invalid_argument("field JSON must be an array of three components");
    TrigVectorField u;
    for (int c = 0; c < 3; ++c) {
        for (const auto& jt : root[c]) {
            const std::string fs = jt.at("factors").get<std::string>();
            if (fs.size() != 3) throw std::invalid_argument("factors must have three letters");
            Factors3 f{factor_from_char(fs[0]), factor_from_char(fs[1]), factor_from_char(fs[2])};
            auto kj = jt.at("k");
            Index3 k{kj.at(0).get<int>(), kj.at(1).get<int>(), kj.at(2).get<int>()};
            u.comp[c].add_term(f, k, jt.at("pi_pow").get<int>(),
                               rat_parse(jt.at("coeff").get<std::string>()));
        }
        u.comp[c].finalize();
    }
    return u;
}

}  // namespace cylsat
