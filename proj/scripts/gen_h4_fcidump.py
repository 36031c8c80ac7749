# Copyright 2026 The cdrkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerate data/h4_sto3g.fcidump (rectangular H4, 1.5 x 1.8 Angstrom, STO-3G).

Needs PySCF. The core energy is written as 0 so that energies reported by the
toolkit are electronic energies; the nuclear repulsion is printed for reference.
"""

import sys

import numpy as np
from pyscf import ao2mo, fci, gto, scf
from pyscf.tools import fcidump


def main(out):
    mol = gto.M(
        atom="H 0 0 0; H 1.5 0 0; H 0 1.8 0; H 1.5 1.8 0",
        basis="sto-3g",
        unit="Angstrom",
        verbose=0,
    )
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    g = ao2mo.restore(1, ao2mo.full(mol, c), c.shape[1])
    fcidump.from_integrals(out, h1, g, c.shape[1], mol.nelectron, nuc=0.0, tol=1e-14)
    e_fci, _ = fci.FCI(mf).kernel()
    e_nuc = mol.energy_nuc()
    print(f"E_nuc          {e_nuc:.12f}")
    print(f"E_RHF (elec)   {mf.e_tot - e_nuc:.12f}")
    print(f"E_FCI (elec)   {e_fci - e_nuc:.12f}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "h4_sto3g.fcidump")
