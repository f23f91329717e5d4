#include <pybind11/pybind11.h>
PYBIND11_MODULE(_dtf, m) { m.doc() = "placeholder"; }
