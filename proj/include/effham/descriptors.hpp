#pragma once

// JSON descriptors for potentials and Hamiltonians, as accepted by the CLI.
//   {"type":"sawtooth","s":0.5}
//   {"type":"piecewise","points":[[0,0],[0.3,-1],[1,0]]}
//   {"type":"multiwell","a":[0,0.5,1],"c":[0.2,0.7]}
//   {"type":"fourier","coeffs":[[k,re,im],...]}            (1D)
//   {"type":"fourier","dim":2,"coeffs":[[k1,k2,re,im],...]}
//   {"type":"preset","name":"vhat2"|"zero"|"mathieu"}
//   {"type":"quadratic"} {"type":"abs"} {"type":"power","gamma":g,"c":c}
//   {"type":"nonconvexF","theta1":2,"theta2":1.5}

#include <string_view>
#include <variant>

#include "effham/ham1d.hpp"
#include "effham/potential.hpp"

namespace effham {

/// Throws precondition_error on malformed descriptors; domain and shape errors pass through.
Potential parse_potential(std::string_view json_text);
FourierPotential parse_fourier(std::string_view json_text);

using HamiltonianSpec = std::variant<QuasiConvexProfile, NonconvexProfile>;

HamiltonianSpec parse_hamiltonian(std::string_view json_text);
Hamiltonian1D to_hamiltonian1d(const HamiltonianSpec& h);

}  // namespace effham
