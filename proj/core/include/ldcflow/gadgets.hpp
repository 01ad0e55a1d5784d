#pragma once

// Generator choice networks: gadgets whose port v optimally supplies either
// nothing or exactly x.

#include <string>

#include "ldcflow/network.hpp"

namespace ldc {

/// Role of the port node: Minus makes it a load, Plus a generator, Port plain.
enum class Polarity { Minus, Plus, Port };

const char* to_string(Polarity p);

/// Switching gadget on nodes g (generator), l (load) and the port:
/// g-v (1, x), g-l (1, 2x), v-l (1, x). Internal nodes are named prefix + "g"
/// and prefix + "l"; the port keeps its name.
Network gsch(const Rational& x, const NodeId& port, Polarity polarity, const std::string& prefix = {});

/// FACTS gadget with generators g, e, t, load l, hub c and the port:
/// g-v (1, x), e-v ([2/5, 8/5], 2x/5), e-c (1, 13x/20), v-c (1, 9x/10),
/// t-c (1, x), t-l (1, 71x/20), c-l (1, 51x/20).
Network gfch(const Rational& x, const NodeId& port, Polarity polarity, const std::string& prefix = {});

}  // namespace ldc
