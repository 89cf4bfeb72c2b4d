#pragma once

#include "flowcat/cli.hpp"
#include "flowcat/diagram.hpp"
#include "flowcat/flow.hpp"
#include "flowcat/hom.hpp"
#include "flowcat/morphism.hpp"
#include "flowcat/pushout_product.hpp"
#include "flowcat/standard.hpp"
#include "flowcat/tensor.hpp"
#include "flowcat/text_io.hpp"
