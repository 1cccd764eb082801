#ifndef HPE_HPE_HPP
#define HPE_HPE_HPP

#include "hpe/alphabet.hpp"
#include "hpe/base_field.hpp"
#include "hpe/error.hpp"
#include "hpe/extension_field.hpp"
#include "hpe/hash.hpp"
#include "hpe/im.hpp"
#include "hpe/keys.hpp"
#include "hpe/kpoly.hpp"
#include "hpe/linalg.hpp"
#include "hpe/multipoly.hpp"
#include "hpe/rng.hpp"
#include "hpe/scheme.hpp"
#include "hpe/serialize.hpp"
#include "hpe/signature.hpp"
#include "hpe/upoly.hpp"

#endif  // HPE_HPE_HPP
