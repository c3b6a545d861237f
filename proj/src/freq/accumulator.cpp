#include "qtune/freq/accumulator.hpp"
