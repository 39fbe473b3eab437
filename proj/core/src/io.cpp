#include "nilflat/io.hpp"

#include "nilflat/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace nilflat::io {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Parse, where + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t p = 0; p < end; ++p) {
            if (text[p] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                          ": " + what);
    }
}

const json& member(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) schema_error(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::size_t read_count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        schema_error(where, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::size_t read_index(const json& v, std::size_t dim, const std::string& where) {
    const std::size_t i = read_count(v, where);
    if (i < 1 || i > dim) {
        throw Error(ErrorKind::InvalidArgument,
                    where + ": index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
    }
    return i - 1;
}

Integer read_integer(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Integer(v.dump());
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        const bool digits = s.size() > start && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                                            [](char c) { return c >= '0' && c <= '9'; });
        if (digits) return Integer(s);
    }
    schema_error(where, "expected an exact integer (number or digit string)");
}

Rational read_rational(const json& obj, const std::string& where) {
    const Integer num = read_integer(member(obj, "num", where), where + ".num");
    const Integer den = read_integer(member(obj, "den", where), where + ".den");
    if (den == 0) throw Error(ErrorKind::InvalidArgument, where + ": zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

void put_rational(json& obj, const Rational& q) {
    obj["num"] = integer_json(q.get_num());
    obj["den"] = integer_json(q.get_den());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CocycleRecord cocycle_from_json(const json& obj, const std::string& where) {
    CocycleRecord rec;
    rec.base_dim = read_count(member(obj, "base_dim", where), where + ".base_dim");
    const json& list = member(obj, "cocycle", where);
    if (!list.is_array()) schema_error(where + ".cocycle", "expected an array");
    std::map<std::pair<std::size_t, std::size_t>, Rational> seen;
    std::vector<CentralCocycle::Entry> entries;
    for (std::size_t e = 0; e < list.size(); ++e) {
        const std::string at = where + ".cocycle[" + std::to_string(e) + "]";
        std::size_t i = read_index(member(list[e], "i", at), rec.base_dim, at + ".i");
        std::size_t j = read_index(member(list[e], "j", at), rec.base_dim, at + ".j");
        Rational value = read_rational(list[e], at);
        if (i == j) throw Error(ErrorKind::NotSkew, at + ": diagonal entry");
        if (i > j) {
            std::swap(i, j);
            value = -value;
        }
        const auto [it, fresh] = seen.emplace(std::make_pair(i, j), value);
        if (!fresh) throw Error(ErrorKind::InvalidArgument, at + ": pair given twice");
        entries.push_back({i, j, value});
    }
    rec.cocycle = CentralCocycle::from_entries(rec.base_dim, entries);
    return rec;
}

json cocycle_to_json(const CocycleRecord& rec) {
    json obj;
    obj["base_dim"] = rec.base_dim;
    json list = json::array();
    for (const auto& e : rec.cocycle.entries()) {
        json entry;
        entry["i"] = e.i + 1;
        entry["j"] = e.j + 1;
        put_rational(entry, e.value);
        list.push_back(std::move(entry));
    }
    obj["cocycle"] = std::move(list);
    return obj;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path);
    return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorKind::Io, "write failed: " + path);
}

NilAlgebra parse_algebra(std::string_view text) {
    const json doc = parse_json(text);
    const std::size_t dim = read_count(member(doc, "dim", "algebra"), "dim");
    const json& cls = member(doc, "class", "algebra");
    if (!cls.is_number_integer()) schema_error("class", "expected an integer");
    const json& brackets = member(doc, "brackets", "algebra");
    if (!brackets.is_array()) schema_error("brackets", "expected an array");

    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> seen;
    std::vector<BracketTerm> terms;
    for (std::size_t b = 0; b < brackets.size(); ++b) {
        const std::string at = "brackets[" + std::to_string(b) + "]";
        std::size_t i = read_index(member(brackets[b], "i", at), dim, at + ".i");
        std::size_t j = read_index(member(brackets[b], "j", at), dim, at + ".j");
        if (i == j) throw Error(ErrorKind::NotSkew, at + ": [e_i, e_i] must vanish");
        const bool flip = i > j;
        if (flip) std::swap(i, j);
        const json& list = member(brackets[b], "terms", at);
        if (!list.is_array()) schema_error(at + ".terms", "expected an array");
        for (std::size_t t = 0; t < list.size(); ++t) {
            const std::string tat = at + ".terms[" + std::to_string(t) + "]";
            const std::size_t k = read_index(member(list[t], "k", tat), dim, tat + ".k");
            Rational v = read_rational(list[t], tat);
            if (flip) v = -v;
            if (!seen.emplace(std::make_tuple(i, j, k), v).second) {
                throw Error(ErrorKind::InvalidArgument, tat + ": constant given twice");
            }
            if (v != 0) terms.push_back({i, j, k, v});
        }
    }
    return NilAlgebra(dim, cls.get<int>(), terms);
}

std::string format_algebra(const NilAlgebra& a) {
    json doc;
    doc["dim"] = a.dim();
    doc["class"] = a.declared_class();
    json brackets = json::array();
    const auto& terms = a.terms();
    for (std::size_t p = 0; p < terms.size();) {
        json entry;
        entry["i"] = terms[p].i + 1;
        entry["j"] = terms[p].j + 1;
        json list = json::array();
        std::size_t q = p;
        for (; q < terms.size() && terms[q].i == terms[p].i && terms[q].j == terms[p].j; ++q) {
            json term;
            term["k"] = terms[q].k + 1;
            put_rational(term, terms[q].value);
            list.push_back(std::move(term));
        }
        entry["terms"] = std::move(list);
        brackets.push_back(std::move(entry));
        p = q;
    }
    doc["brackets"] = std::move(brackets);
    return dump(doc);
}

CocycleRecord parse_cocycle(std::string_view text) { return cocycle_from_json(parse_json(text), "cocycle"); }

std::string format_cocycle(const CocycleRecord& record) { return dump(cocycle_to_json(record)); }

std::vector<CocycleRecord> parse_tower(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_array()) schema_error("tower", "expected an array of steps");
    std::vector<CocycleRecord> steps;
    for (std::size_t s = 0; s < doc.size(); ++s) {
        steps.push_back(cocycle_from_json(doc[s], "tower[" + std::to_string(s) + "]"));
    }
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const std::size_t expect = steps.size() - 1 - s;
        if (steps[s].base_dim != expect) {
            throw Error(ErrorKind::InvalidArgument, "tower[" + std::to_string(s) + "]: base_dim " +
                                                        std::to_string(steps[s].base_dim) + ", expected " +
                                                        std::to_string(expect));
        }
    }
    return steps;
}

std::string format_tower(const std::vector<CocycleRecord>& steps) {
    json doc = json::array();
    for (const auto& s : steps) doc.push_back(cocycle_to_json(s));
    return dump(doc);
}

std::vector<CocycleRecord> tower_records(const BundleTower& tower) {
    std::vector<CocycleRecord> out;
    out.reserve(tower.length());
    for (const auto& step : tower.steps) out.push_back({step.base.dim(), step.cocycle});
    return out;
}

Mat parse_metric(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_array()) schema_error("metric", "expected an array of rows");
    const auto n = static_cast<Eigen::Index>(doc.size());
    Mat g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = doc[static_cast<std::size_t>(r)];
        const std::string at = "metric[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            schema_error(at, "expected a row of length " + std::to_string(n));
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) schema_error(at + "[" + std::to_string(c) + "]", "expected a number");
            g(r, c) = v.get<double>();
        }
    }
    return g;
}

std::string format_metric(const Mat& g) {
    json doc = json::array();
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
        doc.push_back(std::move(row));
    }
    return dump(doc);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_decay_csv(const DecayReport& report) {
    std::string out = "t,sup_abs_K,base_sup_K,bound,diam_bound\n";
    for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
        out += format_double(report.t_grid[i]) + ',' + format_double(report.sup_abs_K[i]) + ',' +
               format_double(report.base_sup_K) + ',' + format_double(report.bound[i]) + ',' +
               format_double(report.diam_bound[i]) + '\n';
    }
    return out;
}

}  // namespace nilflat::io
