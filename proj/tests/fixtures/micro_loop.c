for( i=0; i++<n;){
    //Code Logic
};
