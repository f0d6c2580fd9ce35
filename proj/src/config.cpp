#include "amot/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace amot {

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Removes a '#' comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

struct ValueParser {
    const std::string& s;
    size_t i = 0;
    size_t line;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw InputError("module file line " + std::to_string(line) + ": " + msg);
    }
    std::string quoted() {
        skip();
        if (i >= s.size() || s[i] != '"') fail("expected a quoted string");
        size_t j = s.find('"', i + 1);
        if (j == std::string::npos) fail("unterminated string");
        std::string out = s.substr(i + 1, j - i - 1);
        i = j + 1;
        return out;
    }
    std::vector<std::string> string_row() {
        skip();
        if (i >= s.size() || s[i] != '[') fail("expected '['");
        ++i;
        std::vector<std::string> row;
        for (;;) {
            skip();
            if (i < s.size() && s[i] == ']') {
                ++i;
                return row;
            }
            row.push_back(quoted());
            skip();
            if (i < s.size() && s[i] == ',') ++i;
        }
    }
    std::vector<std::vector<std::string>> string_matrix() {
        skip();
        if (i >= s.size() || s[i] != '[') fail("expected '['");
        ++i;
        std::vector<std::vector<std::string>> rows;
        for (;;) {
            skip();
            if (i >= s.size()) fail("unterminated array");
            if (s[i] == ']') {
                ++i;
                break;
            }
            rows.push_back(string_row());
            skip();
            if (i < s.size() && s[i] == ',') ++i;
        }
        skip();
        if (i != s.size()) fail("trailing input after array");
        return rows;
    }
};

}  // namespace

ModuleFile parse_module_text(const std::string& text) {
    ModuleFile f;
    bool saw_spec = false;
    std::istringstream in(text);
    std::string raw, section;
    size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
            section = strip(line.substr(1, line.size() - 2));
            if (section != "field" && section != "module")
                throw InputError("module file line " + std::to_string(lineno) +
                                 ": unknown section [" + section + "]");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("module file line " + std::to_string(lineno) +
                             ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));

        // Arrays may span lines; accumulate until brackets balance.
        if (!val.empty() && val.front() == '[') {
            int depth = 0;
            for (char c : val) depth += c == '[' ? 1 : c == ']' ? -1 : 0;
            while (depth > 0 && std::getline(in, raw)) {
                ++lineno;
                std::string more = strip(strip_comment(raw));
                for (char c : more) depth += c == '[' ? 1 : c == ']' ? -1 : 0;
                val += " " + more;
            }
        }

        ValueParser vp{val, 0, lineno};
        if (section == "field") {
            if (key == "spec") {
                f.field = parse_field_spec(vp.quoted());
                saw_spec = true;
            } else if (key == "theta") {
                f.theta = vp.quoted();
            } else if (key == "var") {
                f.var = vp.quoted();
            } else {
                vp.fail("unknown key '" + key + "' in [field]");
            }
        } else if (section == "module") {
            if (key == "kind") {
                f.kind = vp.quoted();
            } else if (key == "phi_t") {
                f.phi_t = vp.quoted();
            } else if (key == "T" || key == "matrix") {
                f.matrix = vp.string_matrix();
            } else {
                vp.fail("unknown key '" + key + "' in [module]");
            }
        } else {
            vp.fail("key outside of a [field] or [module] section");
        }
    }
    if (!saw_spec) throw InputError("module file: missing field spec");
    if (f.kind.empty()) throw InputError("module file: missing module kind");
    return f;
}

ModuleFile read_module_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open module file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_module_text(buf.str());
}

const DrinfeldModule& RealizedModule::drinfeld_or_throw() const {
    if (!drinfeld) throw InputError("this command needs a Drinfeld module (kind = \"drinfeld\")");
    return *drinfeld;
}

const AMotiveMatrix& RealizedModule::motive_or_throw() const {
    if (!motive) throw InputError("this command needs a motive");
    return *motive;
}

RealizedModule realize(const ModuleFile& f) {
    RealizedModule r;
    r.tower = std::make_unique<FieldTower>(f.field.p, f.field.e);
    const FieldTower* tw = r.tower.get();

    if (f.field.finite) {
        // Default theta: the level generator; the prime field has none, so 0.
        FieldElement theta =
            !f.theta.empty()           ? parse_element(tw, f.field.d, f.theta)
            : (f.field.d * f.field.e > 1) ? tw->gen(f.field.d)
                                          : tw->from_int(0, 1);
        r.K = std::make_unique<AField>(AField::finite(tw, theta));
    } else if (f.theta.empty()) {
        r.K = std::make_unique<AField>(AField::generic(tw, f.var));
    } else {
        r.K = std::make_unique<AField>(
            AField::generic_with_theta(tw, parse_ratfunc(tw, f.theta, f.var), f.var));
    }

    if (f.kind == "drinfeld") {
        if (f.phi_t.empty()) throw InputError("drinfeld module needs phi_t");
        r.drinfeld.emplace(r.K.get(), parse_twisted(r.K.get(), f.phi_t));
        r.motive = motive_of_drinfeld(*r.drinfeld);
    } else if (f.kind == "motive") {
        size_t n = f.matrix.size();
        if (n == 0) throw InputError("motive needs a square matrix T");
        Mat<KRat> T(n, n, KRat::zero(r.K.get()));
        for (size_t i = 0; i < n; ++i) {
            if (f.matrix[i].size() != n) throw InputError("motive matrix must be square");
            for (size_t j = 0; j < n; ++j) T.at(i, j) = parse_krat(r.K.get(), f.matrix[i][j]);
        }
        r.motive = make_motive(r.K.get(), std::move(T));
    } else {
        throw InputError("module kind must be \"drinfeld\" or \"motive\"");
    }
    return r;
}

}  // namespace amot
