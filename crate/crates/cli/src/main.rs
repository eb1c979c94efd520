fn main() {
    println!("nlscrit: command line interface under construction");
}
