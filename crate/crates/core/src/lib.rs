pub mod exactmat;
pub mod liealg;
pub mod liecoh;
pub mod grpcoh;
pub mod ext;
pub mod modular;
pub mod spacetime;
pub mod cli;
