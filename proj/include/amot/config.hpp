#pragma once

#include <memory>

#include "amot/motive.hpp"
#include "amot/parse.hpp"

namespace amot {

// Parsed module file. The accepted format is a TOML subset: '#' comments,
// [section] headers, and key = value lines where a value is a quoted string,
// an integer, or a (possibly multi-line) array of string arrays.
//
//   [field]
//   spec = "GF(3^2)"        # or "GF(3)(theta)" for the generic base
//   theta = "y + 1"         # optional; default is the level generator
//   var = "theta"           # generic variable name, optional
//
//   [module]
//   kind = "drinfeld"       # or "motive"
//   phi_t = "theta + T"     # drinfeld: twisted polynomial in T
//   T = [["0", "t"],        # motive: square matrix of rationals in t
//        ["1", "0"]]
struct ModuleFile {
    FieldSpec field;
    std::string theta;
    std::string var = "theta";
    std::string kind;
    std::string phi_t;
    std::vector<std::vector<std::string>> matrix;
};

ModuleFile parse_module_text(const std::string& text);
ModuleFile read_module_file(const std::string& path);

// Live objects for a module file; owns the tower and A-field the module
// points into, so keep it alive while using them.
struct RealizedModule {
    std::unique_ptr<FieldTower> tower;
    std::unique_ptr<AField> K;
    std::optional<DrinfeldModule> drinfeld;
    std::optional<AMotiveMatrix> motive;  // given matrix, or motive of phi_t

    const DrinfeldModule& drinfeld_or_throw() const;
    const AMotiveMatrix& motive_or_throw() const;
};

RealizedModule realize(const ModuleFile& f);

}  // namespace amot
