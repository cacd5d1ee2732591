#pragma once

#include "shiftprop/certificates.hpp"
#include "shiftprop/det.hpp"
#include "shiftprop/diagram.hpp"
#include "shiftprop/integer.hpp"
#include "shiftprop/invariants.hpp"
#include "shiftprop/io.hpp"
#include "shiftprop/json_io.hpp"
#include "shiftprop/matrix.hpp"
#include "shiftprop/model.hpp"
#include "shiftprop/monoid.hpp"
#include "shiftprop/natinf.hpp"
#include "shiftprop/pair_search.hpp"
#include "shiftprop/permutation.hpp"
#include "shiftprop/poly.hpp"
#include "shiftprop/search.hpp"
#include "shiftprop/semiring.hpp"
#include "shiftprop/series.hpp"
#include "shiftprop/smith.hpp"
#include "shiftprop/traced.hpp"
#include "shiftprop/weighted.hpp"
