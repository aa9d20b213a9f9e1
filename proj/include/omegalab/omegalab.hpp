#pragma once

#include "bitstring.hpp"
#include "codecs.hpp"
#include "container.hpp"
#include "dyadic.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "integer.hpp"
#include "kraft.hpp"
#include "law_io.hpp"
#include "mixedlaw.hpp"
#include "quadrature.hpp"
#include "quantizer.hpp"
#include "renorm.hpp"
