# Copyright 2026 The specdeblur Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Blind image deblurring from convolution eigenvalues."""

from ._specdeblur import (
    SpecDeblurError,
    blind_deblur,
    conv2d_full,
    conv2d_valid,
    conv_spectrum,
    estimate_kernel,
    feature_map,
    kernel_error,
    load_image,
    load_kernel,
    make_kernel,
    make_test_image,
    project_simplex,
    psnr,
    regularizer_hessian,
    save_image,
    solve_qp,
    synth_blur,
    toeplitz_dense,
    total_variation,
    tv_deconv,
)

__all__ = [
    "SpecDeblurError",
    "blind_deblur",
    "conv2d_full",
    "conv2d_valid",
    "conv_spectrum",
    "estimate_kernel",
    "feature_map",
    "kernel_error",
    "load_image",
    "load_kernel",
    "make_kernel",
    "make_test_image",
    "project_simplex",
    "psnr",
    "regularizer_hessian",
    "save_image",
    "solve_qp",
    "synth_blur",
    "toeplitz_dense",
    "total_variation",
    "tv_deconv",
]
