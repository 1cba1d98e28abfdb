#include "pinn/activation.hpp"

namespace pinn {

Activation activation_from_name(const std::string& name) {
    if (name == "gelu") return Activation::gelu;
    if (name == "tanh") return Activation::tanh;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "relu") return Activation::relu;
    throw ConfigError("unknown activation '" + name + "' (expected gelu|tanh|sigmoid|relu)");
}

const char* activation_name(Activation a) {
    switch (a) {
    case Activation::gelu: return "gelu";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
    case Activation::relu: return "relu";
    }
    return "?";
}

double gelu(double x) { return gelu_derivs(x).g; }
double gelu_d1(double x) { return gelu_derivs(x).g1; }
double gelu_d2(double x) { return gelu_derivs(x).g2; }

} // namespace pinn
