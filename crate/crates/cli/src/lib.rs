pub mod def;
pub mod report;
pub mod run;
pub mod expr;
