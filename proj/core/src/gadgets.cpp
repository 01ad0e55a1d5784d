#include "ldcflow/gadgets.hpp"

#include "ldcflow/errors.hpp"

namespace ldc {
namespace {

void require_positive(const Rational& x) {
  if (x.sign() <= 0) throw Error(ErrorCode::NonpositiveX, "gadget size must be positive, got " + x.str());
}

NodeRole port_role(Polarity p) {
  switch (p) {
    case Polarity::Minus: return NodeRole::Load;
    case Polarity::Plus: return NodeRole::Generator;
    case Polarity::Port: return NodeRole::Plain;
  }
  return NodeRole::Plain;
}

}  // namespace

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::Minus: return "minus";
    case Polarity::Plus: return "plus";
    case Polarity::Port: return "port";
  }
  return "port";
}

Network gsch(const Rational& x, const NodeId& port, Polarity polarity, const std::string& prefix) {
  require_positive(x);
  const NodeId g = prefix + "g";
  const NodeId l = prefix + "l";
  Network n;
  n.add_node(g, NodeRole::Generator).add_node(l, NodeRole::Load).add_node(port, port_role(polarity));
  n.add_edge(g, port, 1, x);
  n.add_edge(g, l, 1, 2 * x);
  n.add_edge(port, l, 1, x);
  return n;
}

Network gfch(const Rational& x, const NodeId& port, Polarity polarity, const std::string& prefix) {
  require_positive(x);
  const NodeId g = prefix + "g";
  const NodeId e = prefix + "e";
  const NodeId t = prefix + "t";
  const NodeId l = prefix + "l";
  const NodeId c = prefix + "c";
  Network n;
  n.add_node(g, NodeRole::Generator).add_node(e, NodeRole::Generator).add_node(t, NodeRole::Generator);
  n.add_node(l, NodeRole::Load).add_node(c).add_node(port, port_role(polarity));
  n.add_edge(g, port, 1, x);
  n.add_edge(e, port, Rational(2, 5), Rational(8, 5), x * Rational(2, 5));
  n.add_edge(e, c, 1, x * Rational(13, 20));
  n.add_edge(port, c, 1, x * Rational(9, 10));
  n.add_edge(t, c, 1, x);
  n.add_edge(t, l, 1, x * Rational(71, 20));
  n.add_edge(c, l, 1, x * Rational(51, 20));
  return n;
}

}  // namespace ldc
