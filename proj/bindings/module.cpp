#include <pybind11/pybind11.h>
PYBIND11_MODULE(_microforge, m) { m.doc() = "placeholder"; }
