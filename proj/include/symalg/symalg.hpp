#pragma once
/// \file symalg.hpp
/// Everything: rings, algebras, symmetric tensors, norms, divided powers,
/// multivalued morphisms, Cech complexes, JSON I/O and the suite driver.

#include "integer.hpp"
#include "rings.hpp"
#include "hom.hpp"
#include "linalg.hpp"
#include "permutation.hpp"
#include "algebra.hpp"
#include "tensor.hpp"
#include "symfun.hpp"
#include "elementary.hpp"
#include "witness.hpp"
#include "sampling.hpp"
#include "norm.hpp"
#include "divided.hpp"
#include "finset.hpp"
#include "multivalued.hpp"
#include "smith.hpp"
#include "cech.hpp"
#include "json_io.hpp"
#include "suite.hpp"
