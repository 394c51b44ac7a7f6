#include <pybind11/pybind11.h>
PYBIND11_MODULE(tcgpy, m) { m.doc() = "twisted group toolkit"; }
