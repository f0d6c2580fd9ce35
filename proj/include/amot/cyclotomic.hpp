#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amot/afield.hpp"

namespace amot {

// Mechanized verification of the layered Kummer-type tower
//   B_0 = F[x_0]/(x_0^{q-1} + zeta),   B_n = B_{n-1}[x_n]/(x_n^q + zeta x_n - x_{n-1})
// over F = F_q(zeta) with zeta transcendental, together with the layer-0
// scalar action and the series law sigma(l) = (z - zeta) l for
// l = sum x_n z^n. All checks are exact ring identities in the quotients.
struct TowerCheckReport {
    uint64_t q = 0;
    uint32_t levels = 0;
    std::vector<uint64_t> layer_degrees;
    bool separable_layers = false;
    bool recursion_holds = false;
    bool sigma_coefficient_law = false;
    bool action_is_character = false;

    bool ok() const {
        return separable_layers && recursion_holds && sigma_coefficient_law &&
               action_is_character;
    }
    std::string to_string() const;
};

// levels = deepest layer built (tower degree (q-1) * q^levels, capped).
TowerCheckReport cyclotomic_tower_check(const FieldTower* tw, uint32_t levels);

}  // namespace amot
