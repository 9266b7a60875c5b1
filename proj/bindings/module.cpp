#include <pybind11/pybind11.h>
PYBIND11_MODULE(wdrew, m) { m.doc() = "stub"; }
