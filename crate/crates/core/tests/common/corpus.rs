pub const NADH: &str = "NC(=O)C1[CH2]C=CN(C=1)C2OC(COP(O)(=O)OP(O)(=O)OCC3OC(C(O)C3O)n4cnc5c(N)ncnc54)C(O)C2O";
pub const NAD: &str = "NC(=O)c1ccc[n+](c1)C2OC(COP(O)(=O)OP(O)(=O)OCC3OC(C(O)C3O)n4cnc5c(N)ncnc54)C(O)C2O";

pub const CORPUS: &[&str] = &[
    "C",
    "CC",
    "CCC",
    "CCCC",
    "CC(C)C",
    "CC(C)(C)C",
    "CCCO",
    "CC(C)O",
    "C=C",
    "C#C",
    "CC=C",
    "C=CC=C",
    "C=C(C)C=C",
    "C=C=C",
    "O",
    "OO",
    "CO",
    "CCO",
    "OCCO",
    "C=O",
    "CC=O",
    "OCC=O",
    "C(=O)CO",
    "OC=CO",
    "OC=C",
    "CC(=O)O",
    "OC(=O)C=O",
    "CC(C)=O",
    "CCOC(C)=O",
    "OCC(O)CO",
    "OC(CO)C=O",
    "OCC(=O)CO",
    "OCC(O)C(O)C=O",
    "OCC1OC(O)C(O)C(O)C1O",
    "N",
    "NN",
    "N#N",
    "CN",
    "CCN",
    "NC=O",
    "NC(N)=O",
    "NCC(=O)O",
    "CC(N)C(=O)O",
    "CC(C)CC(N)C(=O)O",
    "NCCCCC(N)C(=O)O",
    "OC(=O)CCC(N)C(=O)O",
    "CC#N",
    "O=C=O",
    "[C-]#[O+]",
    "[NH4+]",
    "[O-]C=O",
    "C[N+](C)(C)C",
    "ClC",
    "FC(F)F",
    "BrCCBr",
    "ClCCI",
    "S",
    "CS",
    "CSC",
    "CS(C)=O",
    "OS(=O)(=O)O",
    "OP(=O)(O)O",
    "C1CC1",
    "C1CCC1",
    "C1CCCC1",
    "C1CCCCC1",
    "C1CCOC1",
    "C1CCNCC1",
    "C1=CCCCC1",
    "C1=CCC=C1",
    "C1=CC=CC=CC=C1",
    "C12C3C1C23",
    "C12C3C4C1C5C2C3C45",
    "C1CC2CC1CC2",
    "c1ccccc1",
    "C1=CC=CC=C1",
    "Cc1ccccc1",
    "Oc1ccccc1",
    "Nc1ccccc1",
    "OC(=O)c1ccccc1",
    "CC(=O)Oc1ccccc1C(=O)O",
    "c1ccncc1",
    "c1cc[nH]c1",
    "c1ccoc1",
    "c1ccsc1",
    "c1cnc[nH]1",
    "c1ncncn1",
    "O=c1cc[nH]cc1",
    "c1ccc2ccccc2c1",
    "c1ccc2cc3ccccc3cc2c1",
    "c1ccc2c(c1)ccc1ccccc12",
    "c1ccc2[nH]ccc2c1",
    "c1ccc2ncccc2c1",
    "Cn1cnc2c(N)ncnc21",
    "C[n+]1ccccc1",
    "CN1C=NC2=C1C(=O)N(C(=O)N2C)C",
    NADH,
    NAD,
];
