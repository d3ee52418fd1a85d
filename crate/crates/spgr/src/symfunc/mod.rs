pub mod msym;
pub mod partition;
pub mod schur;
pub mod theta;
