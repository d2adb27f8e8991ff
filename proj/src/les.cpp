namespace tricat {}
