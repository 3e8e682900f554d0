#include "amoeba/polycore.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace amoeba {

bool GradedLexLess::operator()(const ExponentVector& a, const ExponentVector& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

int total_degree(const ExponentVector& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

const char* to_string(Field field) {
    return field == Field::real ? "real" : "complex";
}

MultiPoly::MultiPoly(std::size_t nvars, Field field) : nvars_(nvars), field_(field) {}

MultiPoly::MultiPoly(std::size_t nvars, const std::vector<std::pair<ExponentVector, cplx>>& terms,
                     Field field)
    : nvars_(nvars), field_(field) {
    for (const auto& [e, c] : terms) {
        if (e.size() != nvars) {
            throw ArgumentError("exponent vector length " + std::to_string(e.size()) +
                                " does not match nvars " + std::to_string(nvars));
        }
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) {
            throw ArgumentError("negative exponent");
        }
        if (field == Field::real && c.imag() != 0.0) {
            throw ArgumentError("real-tagged polynomial with non-real coefficient");
        }
        terms_[e] += c;
    }
    std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx(0.0, 0.0); });
}

cplx MultiPoly::coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
}

int MultiPoly::degree() const {
    // Graded order puts the highest degree last.
    return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

double MultiPoly::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

MultiPoly MultiPoly::with_field(Field field) const {
    MultiPoly out(nvars_, field);
    for (const auto& [e, c] : terms_) {
        if (field == Field::real && c.imag() != 0.0) {
            throw ArgumentError("cannot tag a polynomial with non-real coefficients as real");
        }
    }
    out.terms_ = terms_;
    return out;
}

ThetaPoint::ThetaPoint(std::vector<double> angles) : angles_(std::move(angles)) {
    for (double a : angles_) {
        if (!(a >= 0.0 && a < std::numbers::pi)) {
            throw ArgumentError("theta angle outside [0, pi): " + std::to_string(a));
        }
    }
}

ThetaPoint ThetaPoint::reduced(std::span<const double> angles) {
    std::vector<double> out;
    out.reserve(angles.size());
    for (double a : angles) {
        double r = std::fmod(a, std::numbers::pi);
        if (r < 0.0) r += std::numbers::pi;
        if (r >= std::numbers::pi) r = 0.0;
        out.push_back(r);
    }
    return ThetaPoint(std::move(out));
}

namespace {

cplx monomial_value(const ExponentVector& e, std::span<const cplx> point) {
    cplx v(1.0, 0.0);
    for (std::size_t j = 0; j < e.size(); ++j) {
        for (int k = 0; k < e[j]; ++k) v *= point[j];
    }
    return v;
}

std::vector<std::pair<ExponentVector, cplx>> term_list(const MultiPoly& f) {
    return {f.terms().begin(), f.terms().end()};
}

}  // namespace

cplx evaluate(const MultiPoly& f, std::span<const cplx> point) {
    if (point.size() != f.nvars()) {
        throw ArgumentError("evaluate: point has " + std::to_string(point.size()) +
                            " coordinates, polynomial has " + std::to_string(f.nvars()) +
                            " variables");
    }
    cplx sum(0.0, 0.0);
    for (const auto& [e, c] : f.terms()) sum += c * monomial_value(e, point);
    return sum;
}

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var_index) {
    if (var_index >= f.nvars()) {
        throw ArgumentError("partial_derivative: variable index out of range");
    }
    std::vector<std::pair<ExponentVector, cplx>> out;
    for (const auto& [e, c] : f.terms()) {
        if (e[var_index] == 0) continue;
        ExponentVector d = e;
        d[var_index] -= 1;
        out.emplace_back(std::move(d), c * static_cast<double>(e[var_index]));
    }
    return MultiPoly(f.nvars(), out, f.field());
}

MultiPoly dehomogenize(const MultiPoly& f, std::size_t chart_index) {
    if (f.nvars() < 2 || chart_index >= f.nvars()) {
        throw ArgumentError("dehomogenize: invalid chart index");
    }
    if (!f.is_homogeneous()) {
        throw ContractViolation("dehomogenize: input is not homogeneous");
    }
    std::vector<std::pair<ExponentVector, cplx>> out;
    out.reserve(f.size());
    for (const auto& [e, c] : f.terms()) {
        ExponentVector d;
        d.reserve(e.size() - 1);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j != chart_index) d.push_back(e[j]);
        }
        out.emplace_back(std::move(d), c);
    }
    return MultiPoly(f.nvars() - 1, out, f.field());
}

MultiPoly homogenize(const MultiPoly& f, std::size_t chart_index, int degree) {
    if (chart_index > f.nvars()) throw ArgumentError("homogenize: invalid chart index");
    if (degree < f.degree()) throw ArgumentError("homogenize: degree below polynomial degree");
    std::vector<std::pair<ExponentVector, cplx>> out;
    out.reserve(f.size());
    for (const auto& [e, c] : f.terms()) {
        ExponentVector h = e;
        h.insert(h.begin() + static_cast<std::ptrdiff_t>(chart_index), degree - total_degree(e));
        out.emplace_back(std::move(h), c);
    }
    return MultiPoly(f.nvars() + 1, out, f.field());
}

MultiPoly rotate_by_angles(const MultiPoly& f, std::span<const double> angles) {
    if (angles.size() != f.nvars()) {
        throw ArgumentError("rotate_arguments: theta has " + std::to_string(angles.size()) +
                            " angles, polynomial has " + std::to_string(f.nvars()) + " variables");
    }
    std::vector<std::pair<ExponentVector, cplx>> out;
    out.reserve(f.size());
    for (const auto& [e, c] : f.terms()) {
        double phase = 0.0;
        for (std::size_t j = 0; j < e.size(); ++j) phase += e[j] * angles[j];
        out.emplace_back(e, c * std::polar(1.0, phase));
    }
    return MultiPoly(f.nvars(), out, Field::complex);
}

MultiPoly rotate_arguments(const MultiPoly& f, const ThetaPoint& theta) {
    return rotate_by_angles(f, theta.angles());
}

std::pair<MultiPoly, MultiPoly> re_im_split(const MultiPoly& f) {
    std::vector<std::pair<ExponentVector, cplx>> re;
    std::vector<std::pair<ExponentVector, cplx>> im;
    for (const auto& [e, c] : f.terms()) {
        if (c.real() != 0.0) re.emplace_back(e, cplx(c.real(), 0.0));
        if (c.imag() != 0.0) im.emplace_back(e, cplx(c.imag(), 0.0));
    }
    return {MultiPoly(f.nvars(), re, Field::real), MultiPoly(f.nvars(), im, Field::real)};
}

MultiPoly reassemble(const MultiPoly& re, const MultiPoly& im) {
    if (re.nvars() != im.nvars()) throw ArgumentError("reassemble: nvars mismatch");
    std::vector<std::pair<ExponentVector, cplx>> out = term_list(re);
    for (const auto& [e, c] : im.terms()) out.emplace_back(e, cplx(0.0, c.real()));
    return MultiPoly(re.nvars(), out, im.is_zero() ? re.field() : Field::complex);
}

MultiPoly scale(const MultiPoly& f, cplx factor) {
    std::vector<std::pair<ExponentVector, cplx>> out;
    for (const auto& [e, c] : f.terms()) out.emplace_back(e, c * factor);
    const bool real = f.field() == Field::real && factor.imag() == 0.0;
    return MultiPoly(f.nvars(), out, real ? Field::real : Field::complex);
}

std::set<ExponentVector, GradedLexLess> support(const MultiPoly& f) {
    if (f.is_zero()) throw EmptySupportError("support of the zero polynomial");
    std::set<ExponentVector, GradedLexLess> out;
    for (const auto& kv : f.terms()) out.insert(kv.first);
    return out;
}

std::string to_text(const MultiPoly& f) {
    std::string out;
    char buf[64];
    for (const auto& [e, c] : f.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g :", c.real(), c.imag());
        out += buf;
        for (int x : e) out += " " + std::to_string(x);
        out += '\n';
    }
    return out;
}

MultiPoly from_text(const std::string& text, std::size_t nvars) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<ExponentVector, cplx>> terms;
    std::size_t detected = nvars;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ArgumentError("polynomial text line " + std::to_string(lineno) + ": missing ':'");
        }
        std::istringstream lhs(line.substr(0, colon));
        std::istringstream rhs(line.substr(colon + 1));
        double re = 0.0;
        double im = 0.0;
        if (!(lhs >> re >> im)) {
            throw ArgumentError("polynomial text line " + std::to_string(lineno) +
                                ": expected two coefficients");
        }
        ExponentVector e;
        int a = 0;
        while (rhs >> a) e.push_back(a);
        if (!rhs.eof()) {
            throw ArgumentError("polynomial text line " + std::to_string(lineno) +
                                ": malformed exponent list");
        }
        if (detected == 0) detected = e.size();
        if (e.size() != detected || e.empty()) {
            throw ArgumentError("polynomial text line " + std::to_string(lineno) +
                                ": inconsistent exponent length");
        }
        terms.emplace_back(std::move(e), cplx(re, im));
    }
    if (detected == 0) throw ArgumentError("polynomial text: cannot infer variable count");
    const bool real = std::all_of(terms.begin(), terms.end(),
                                  [](const auto& t) { return t.second.imag() == 0.0; });
    return MultiPoly(detected, terms, real ? Field::real : Field::complex);
}

}  // namespace amoeba
