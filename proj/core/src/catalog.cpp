#include "mclaw/catalog.hpp"

#include "mclaw/config.hpp"
#include "mclaw/util.hpp"

namespace mclaw {

namespace {

struct CatalogEntry {
  const char* name;
  const char* description;
  const char* text;
};

// Each scenario is an ordinary config so the catalog exercises the same
// parsing path users do.
const CatalogEntry kCatalog[] = {
    {"burgers-flat-circle",
     "Burgers flux on the flat unit circle; a smooth profile steepens into a shock.",
     R"(
[scenario]
label = burgers-flat-circle
[metric]
family = flat
dim = 1
[flux]
family = burgers
direction = 1
[initial]
expression = 0.4 + 0.5*sin(2*pi*r1)
[solver]
n = 128
t_end = 1.0
outputs = 8
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz
)"},
    {"linear-advection-circle",
     "Constant-speed transport on the flat circle, compared against the characteristics reference.",
     R"(
[scenario]
label = linear-advection-circle
[metric]
family = flat
dim = 1
[flux]
family = linear_advection
speed = 1
[initial]
expression = sin(2*pi*r1)
[solver]
n = 128
t_end = 1.0
outputs = 8
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz, oracle_l1(tol=0.1, n=256)
)"},
    {"linear-advection-flat-torus",
     "Constant-velocity transport on the flat 2-torus.",
     R"(
[scenario]
label = linear-advection-flat-torus
[metric]
family = flat
dim = 2
[flux]
family = linear_advection
speed = 1, 0.5
[initial]
expression = 0.5*sin(2*pi*r1)*sin(2*pi*r2)
[solver]
n = 64
t_end = 1.0
outputs = 8
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz
)"},
    {"killing-rotation-torus",
     "Rotation about the symmetry axis of a torus of revolution; the transport field generates isometries.",
     R"(
[scenario]
label = killing-rotation-torus
[metric]
family = torus_of_revolution
major_radius = 2
minor_radius = 1
[flux]
family = killing_rotation
omega = 0.2
[initial]
expression = 0.5 + 0.3*sin(2*pi*r1) + 0.2*cos(2*pi*r2)
[solver]
n = 64
t_end = 1.0
outputs = 8
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz
)"},
    {"shear-flat-torus",
     "Differential rotation on the flat 2-torus; variation grows yet stays inside its envelope.",
     R"(
[scenario]
label = shear-flat-torus
[metric]
family = flat
dim = 2
[flux]
family = shear
amplitude = 1
[initial]
expression = sin(2*pi*(r1 + r2))
[solver]
n = 64
t_end = 1.0
outputs = 8
[checks]
checks = mass, linf, tv_envelope, entropy, lipschitz
)"},
    {"expanding-circle-f0",
     "Fluxless decay on a uniformly expanding circle; exactly solvable, amplitudes shrink like 1/R.",
     R"(
[scenario]
label = expanding-circle-f0
[metric]
family = expanding_circle
radius = 1
rate = 1
[flux]
family = zero
[initial]
expression = 0.5 + 0.5*sin(2*pi*r1)
[solver]
n = 128
t_end = 1.0
outputs = 8
envelope_subsamples = 16384
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz, oracle_l1(tol=1e-10, n=1024)
)"},
    {"dilation-torus-f0",
     "Fluxless contraction of a flat 2-torus; amplitudes and variation grow geometrically.",
     R"(
[scenario]
label = dilation-torus-f0
[metric]
family = dilation
dim = 2
scale = 1
rate = -1
[flux]
family = zero
[initial]
expression = 0.5 + 0.25*sin(2*pi*r1)*cos(2*pi*r2)
[solver]
n = 64
t_end = 1.0
outputs = 8
[checks]
checks = mass, linf, tv_envelope, entropy, lipschitz
)"},
    {"wavy-circle-compressible",
     "Compressive transport on a circle with a nonuniform metric; mass piles up at a stagnation point.",
     R"(
[scenario]
label = wavy-circle-compressible
[metric]
family = wavy_circle
amplitude = 1
[flux]
family = compressible
field1 = 0.3*sin(2*pi*r1)
profile = linear
[initial]
expression = 0.5 + 0.3*cos(2*pi*r1)
[solver]
n = 128
t_end = 0.75
outputs = 8
[checks]
checks = mass, linf, tv_envelope, entropy, lipschitz, oracle_l1(tol=0.1, n=256)
)"},
    {"viscous-burgers-a",
     "Burgers flux on the flat circle with strong explicit viscosity.",
     R"(
[scenario]
label = viscous-burgers-a
[metric]
family = flat
dim = 1
[flux]
family = burgers
direction = 1
[initial]
expression = 0.3 + 0.2*sin(2*pi*r1)
[solver]
n = 256
t_end = 0.12
epsilon = 0.01
outputs = 8
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz
)"},
    {"viscous-burgers-b",
     "Burgers flux on the flat circle with weak explicit viscosity.",
     R"(
[scenario]
label = viscous-burgers-b
[metric]
family = flat
dim = 1
[flux]
family = burgers
direction = 1
[initial]
expression = 0.3 + 0.2*sin(2*pi*r1)
[solver]
n = 256
t_end = 0.12
epsilon = 0.001
outputs = 8
[checks]
checks = mass, linf, tv_envelope, tv_diminishing, entropy, lipschitz
)"},
};

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const CatalogEntry& e : kCatalog) v.push_back({e.name, e.description});
    return v;
  }();
  return infos;
}

bool is_scenario(const std::string& name) {
  for (const CatalogEntry& e : kCatalog) {
    if (name == e.name) return true;
  }
  return false;
}

RunConfig scenario_config(const std::string& name) {
  for (const CatalogEntry& e : kCatalog) {
    if (name == e.name) return parse_config(e.text);
  }
  std::string list;
  for (const CatalogEntry& e : kCatalog) {
    list += list.empty() ? "" : ", ";
    list += e.name;
  }
  throw ConfigError("unknown scenario '" + name + "' (available: " + list + ")");
}

}  // namespace mclaw
