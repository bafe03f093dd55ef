for( i=0; i<n; i++){  
    //Code logic  
};
